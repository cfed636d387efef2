"""Discrete-event model of the unit-cell error-correction cycle, cycle-time
evaluation, the array initialization sequence, and crossbar patch addressing.

Every unit cell executes the same broadcast program in lock step, so the
cycle is modelled as a sequence of *windows*: a shuttle window is one round
trip between vertex and operation region (several qubits may ride their own
channels in parallel inside it), a gate window applies one broadcast
single-qubit or exchange pulse, and the readout window measures the parked
ancillas.  The cycle census counts windows per kind; the makespan is the
census-weighted sum of the window durations, which is exactly the closed-form
cycle time: 22 shuttle round trips, 14 single-qubit gates, 8 exchange pulses
and one readout.

The shipped default program is one consistent reconstruction of the cycle:
its window census, step count, the two steps that only move data qubit D1,
resource capacities (two electrons per operation region, one per channel)
and per-qubit electron conservation are the checked contract; the exact
interleaving of the dressing pulses is a free choice.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources

from .errors import PatchError, ScheduleConflictError
from .model import ArrayConfig, validate_config

__all__ = [
    "CYCLE_EXCHANGES",
    "CYCLE_ONE_QUBIT_GATES",
    "CYCLE_SHUTTLES",
    "CrossbarAssignment",
    "CycleTime",
    "Event",
    "EventTrace",
    "HOME_QUBITS",
    "PairGate",
    "PatchRect",
    "READOUT_MODES",
    "SoloGate",
    "Step",
    "StepTable",
    "TimingParams",
    "cycle_time",
    "default_step_table",
    "initialization_schedule",
    "load_step_table",
    "patches_to_crossbars",
    "simulate_cycle",
    "step_table_from_text",
    "step_table_to_text",
]

# Window census of one error-correction cycle (the closed-form coefficients).
CYCLE_SHUTTLES = 22
CYCLE_ONE_QUBIT_GATES = 14
CYCLE_EXCHANGES = 8

READOUT_MODES = ("parallel", "sequential", "mixed")

HOME_QUBITS = ("D1", "D2", "A1", "A2")

REGION_CAPACITY = 2   # electrons per operation region
CHANNEL_CAPACITY = 1  # electrons per shuttling channel


@dataclass(frozen=True)
class TimingParams:
    """Operation durations [s]; the shuttle time covers a full round trip."""

    shuttle_s: float = 50e-9
    single_qubit_s: float = 25e-9
    exchange_s: float = 25e-9
    readout_s: float = 1e-6
    dephasing_s: float = 20e-6

    def validate(self) -> None:
        for name in ("shuttle_s", "single_qubit_s", "exchange_s", "readout_s", "dephasing_s"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def with_updates(self, **kwargs) -> "TimingParams":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class SoloGate:
    qubit: str
    region: str
    gate: str


@dataclass(frozen=True)
class PairGate:
    qubit_a: str
    qubit_b: str
    region: str
    rz_carrier: str


@dataclass(frozen=True)
class Step:
    index: int
    kind: str                       # one_qubit | two_qubit | readout | hook
    solo_gates: tuple[SoloGate, ...] = ()
    pair_gates: tuple[PairGate, ...] = ()
    measured: tuple[SoloGate, ...] = ()
    park: bool = False              # defer the return trip past the readout
    note: str = ""

    def shuttling_qubits(self) -> tuple[str, ...]:
        if self.kind == "one_qubit":
            return tuple(g.qubit for g in self.solo_gates)
        if self.kind == "two_qubit":
            return tuple(q for p in self.pair_gates for q in (p.qubit_a, p.qubit_b))
        return ()

    def home_shuttling_qubits(self) -> tuple[str, ...]:
        return tuple(q for q in self.shuttling_qubits() if q in HOME_QUBITS)


@dataclass(frozen=True)
class StepTable:
    steps: tuple[Step, ...]

    def census(self) -> dict[str, int]:
        shuttles = gates_1q = exchanges = readouts = 0
        for step in self.steps:
            if step.kind == "one_qubit":
                shuttles += 1
                gates_1q += 1
            elif step.kind == "two_qubit":
                # exchange, interleaved rz, exchange: one round trip each
                shuttles += 3
                gates_1q += 1
                exchanges += 2
            elif step.kind == "readout":
                readouts += 1
        return {
            "shuttle_round_trips": shuttles,
            "one_qubit_gates": gates_1q,
            "exchanges": exchanges,
            "readout_phases": readouts,
            "steps": len(self.steps),
        }


def _channel(qubit: str, region: str) -> str:
    return f"{qubit}~{region}"


@dataclass(frozen=True)
class Event:
    time_s: float
    step: int
    qubit: str
    op: str
    resource: str


@dataclass(frozen=True)
class EventTrace:
    events: tuple[Event, ...]
    counters: dict[str, int]
    makespan_s: float
    annotations: tuple[str, ...] = ()
    suspended: bool = False

    def to_csv(self) -> str:
        lines = ["time_s,step,qubit,op,resource"]
        for ev in self.events:
            lines.append(f"{ev.time_s!r},{ev.step},{ev.qubit},{ev.op},{ev.resource}")
        return "\n".join(lines) + "\n"


def _check_window(step_index: int, regions: dict[str, list[str]], channels: dict[str, list[str]]) -> None:
    for resource, occupants in regions.items():
        if len(occupants) > REGION_CAPACITY:
            raise ScheduleConflictError(step_index, resource, tuple(occupants), REGION_CAPACITY)
    for resource, occupants in channels.items():
        if len(occupants) > CHANNEL_CAPACITY:
            raise ScheduleConflictError(step_index, resource, tuple(occupants), CHANNEL_CAPACITY)


class _Simulator:
    """Window-by-window executor.

    Time is tracked as integer window counts per kind and re-expanded into
    seconds for every event, so the finished makespan is bit-identical to
    the closed-form census-weighted sum.
    """

    def __init__(self, timing: TimingParams):
        timing.validate()
        self.timing = timing
        self.counts = {"shuttle": 0, "one_qubit": 0, "exchange": 0, "readout": 0}
        self.events: list[Event] = []
        self.parked: list[tuple[int, str, str]] = []  # (step, qubit, region)

    def now(self) -> float:
        t = self.timing
        return (
            self.counts["shuttle"] * t.shuttle_s
            + self.counts["one_qubit"] * t.single_qubit_s
            + self.counts["exchange"] * t.exchange_s
            + self.counts["readout"] * t.readout_s
        )

    def _visit(self, step_index: int, movers: list[tuple[str, str]],
               gate_kind: str, gate_s: float,
               actors: list[tuple[str, str, str]], park: bool = False) -> None:
        """One shuttle round trip bracketing a gate window.

        ``movers`` are (qubit, region) pairs that ride their channels;
        ``actors`` are (qubit, op_label, region) receiving the gate pulse.
        """
        regions: dict[str, list[str]] = {}
        channels: dict[str, list[str]] = {}
        for qubit, region in movers:
            regions.setdefault(region, []).append(qubit)
            channels.setdefault(_channel(qubit, region), []).append(qubit)
        _check_window(step_index, regions, channels)

        start = self.now()
        for qubit, region in movers:
            self.events.append(Event(start, step_index, qubit, "shuttle_out", _channel(qubit, region)))
        gate_start = start + self.timing.shuttle_s / 2.0
        for qubit, label, region in actors:
            self.events.append(Event(gate_start, step_index, qubit, label, region))
        back_start = gate_start + gate_s
        for qubit, region in movers:
            if park:
                self.parked.append((step_index, qubit, region))
            else:
                self.events.append(Event(back_start, step_index, qubit, "shuttle_back", _channel(qubit, region)))
        self.counts["shuttle"] += 1
        self.counts[gate_kind] += 1

    def run_step(self, step: Step) -> None:
        t = self.timing
        if step.kind == "one_qubit":
            movers = [(g.qubit, g.region) for g in step.solo_gates]
            actors = [(g.qubit, f"1q_gate:{g.gate}", g.region) for g in step.solo_gates]
            self._visit(step.index, movers, "one_qubit", t.single_qubit_s, actors, park=step.park)
        elif step.kind == "two_qubit":
            both = [(q, p.region) for p in step.pair_gates for q in (p.qubit_a, p.qubit_b)]
            swaps = [
                (q, f"sqrt_swap:{p.qubit_a}+{p.qubit_b}", p.region)
                for p in step.pair_gates
                for q in (p.qubit_a, p.qubit_b)
            ]
            carriers = [(p.rz_carrier, p.region) for p in step.pair_gates]
            rz_actors = [(p.rz_carrier, "1q_gate:rz(180)", p.region) for p in step.pair_gates]
            self._visit(step.index, both, "exchange", t.exchange_s, swaps)
            self._visit(step.index, carriers, "one_qubit", t.single_qubit_s, rz_actors)
            self._visit(step.index, both, "exchange", t.exchange_s, swaps)
        elif step.kind == "readout":
            regions: dict[str, list[str]] = {}
            for g in step.measured:
                regions.setdefault(g.region, []).append(g.qubit)
            _check_window(step.index, regions, {})
            start = self.now()
            for g in step.measured:
                self.events.append(Event(start, step.index, g.qubit, "readout", g.region))
            self.counts["readout"] += 1
        elif step.kind == "hook":
            pass
        else:
            raise ValueError(f"unknown step kind {step.kind!r}")

    def release_parked(self) -> None:
        # Return trips of parked (measured) qubits complete at the cycle
        # boundary; their round-trip time was charged by the parking step.
        end = self.now()
        for step_index, qubit, region in self.parked:
            self.events.append(Event(end, step_index, qubit, "shuttle_back", _channel(qubit, region)))
        self.parked.clear()


def simulate_cycle(
    table: StepTable,
    timing: TimingParams,
    cell: tuple[int, int] | None = None,
    patches: tuple["PatchRect", ...] = (),
    cfg: ArrayConfig | None = None,
) -> EventTrace:
    """Execute the step table, checking resource capacities window by window.

    A capacity violation raises :class:`ScheduleConflictError` naming the
    step and resource.  When ``cell`` and ``patches`` are given and the cell
    lies inside a disabled patch, the cycle is suspended for that cell: the
    trace carries the annotation and no qubit ever touches a channel.
    """
    if cell is not None and patches:
        bounds = cfg.plane_edge_cells if cfg is not None else None
        for patch in patches:
            patch.validate(bounds)
            if patch.contains(cell):
                return EventTrace(
                    events=(),
                    counters={k: 0 for k in StepTable(()).census()},
                    makespan_s=0.0,
                    annotations=(f"cycle suspended: cell {cell} disabled by crossbar {patch.crossbar}",),
                    suspended=True,
                )

    sim = _Simulator(timing)
    for step in table.steps:
        sim.run_step(step)
    sim.release_parked()
    return EventTrace(
        events=tuple(sim.events),
        counters=table.census(),
        makespan_s=sim.now(),
        annotations=tuple(
            f"step {s.index}: {s.note}" for s in table.steps if s.kind == "hook"
        ),
    )


@dataclass(frozen=True)
class CycleTime:
    total_s: float
    readout_mode: str
    coherence_ratio: float


def cycle_time(timing: TimingParams, cfg: ArrayConfig, readout_mode: str = "parallel") -> CycleTime:
    """Closed-form cycle duration for a readout multiplexing mode.

    parallel: one readout window; sequential: one window per module-edge
    group; mixed: one window per sequential readout slot of the q*r split.
    Also reports how many cycles fit into the dephasing time.
    """
    timing.validate()
    validate_config(cfg).raise_if_invalid()
    if readout_mode not in READOUT_MODES:
        raise ValueError(f"unknown readout mode {readout_mode!r}; expected one of {READOUT_MODES}")
    readout_multiplier = {
        "parallel": 1,
        "sequential": cfg.readout_module_edge,
        "mixed": cfg.sequential_readouts,
    }[readout_mode]
    total = (
        CYCLE_SHUTTLES * timing.shuttle_s
        + CYCLE_ONE_QUBIT_GATES * timing.single_qubit_s
        + CYCLE_EXCHANGES * timing.exchange_s
        + readout_multiplier * timing.readout_s
    )
    ratio = timing.dephasing_s / total if total > 0 else float("inf")
    return CycleTime(total_s=total, readout_mode=readout_mode, coherence_ratio=ratio)


# ---------------------------------------------------------------------------
# Step-table text format

def step_table_from_text(text: str) -> StepTable:
    steps: list[Step] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ValueError(f"line {line_no}: expected '<index> <kind> ...'")
        try:
            index = int(tokens[0])
        except ValueError as exc:
            raise ValueError(f"line {line_no}: bad step index {tokens[0]!r}") from exc
        kind_token = tokens[1]
        park = kind_token.endswith("+park")
        kind = kind_token.removesuffix("+park")
        items = tokens[2:]
        if kind == "one_qubit":
            solo = []
            for item in items:
                try:
                    placement, gate_label = item.split(":", 1)
                    qubit, region = placement.split("@", 1)
                except ValueError as exc:
                    raise ValueError(f"line {line_no}: bad one_qubit item {item!r}") from exc
                solo.append(SoloGate(qubit, region, gate_label))
            steps.append(Step(index, "one_qubit", solo_gates=tuple(solo), park=park))
        elif kind == "two_qubit":
            pairs = []
            for item in items:
                try:
                    placement, carrier_part = item.split(":", 1)
                    pair, region = placement.split("@", 1)
                    qubit_a, qubit_b = pair.split("+", 1)
                    carrier = carrier_part.removeprefix("rz=")
                except ValueError as exc:
                    raise ValueError(f"line {line_no}: bad two_qubit item {item!r}") from exc
                if carrier not in (qubit_a, qubit_b):
                    raise ValueError(
                        f"line {line_no}: rz carrier {carrier!r} is not part of pair {pair!r}"
                    )
                pairs.append(PairGate(qubit_a, qubit_b, region, carrier))
            steps.append(Step(index, "two_qubit", pair_gates=tuple(pairs)))
        elif kind == "readout":
            measured = []
            for item in items:
                try:
                    qubit, region = item.split("@", 1)
                except ValueError as exc:
                    raise ValueError(f"line {line_no}: bad readout item {item!r}") from exc
                measured.append(SoloGate(qubit, region, "readout"))
            steps.append(Step(index, "readout", measured=tuple(measured)))
        elif kind == "hook":
            steps.append(Step(index, "hook", note=" ".join(items)))
        else:
            raise ValueError(f"line {line_no}: unknown step kind {kind!r}")
    return StepTable(tuple(steps))


def step_table_to_text(table: StepTable) -> str:
    lines = []
    for step in table.steps:
        kind = step.kind + ("+park" if step.park else "")
        if step.kind == "one_qubit":
            items = [f"{g.qubit}@{g.region}:{g.gate}" for g in step.solo_gates]
        elif step.kind == "two_qubit":
            items = [
                f"{p.qubit_a}+{p.qubit_b}@{p.region}:rz={p.rz_carrier}"
                for p in step.pair_gates
            ]
        elif step.kind == "readout":
            items = [f"{g.qubit}@{g.region}" for g in step.measured]
        else:
            items = [step.note] if step.note else []
        lines.append(" ".join([str(step.index), kind, *items]).rstrip())
    return "\n".join(lines) + "\n"


def load_step_table(path) -> StepTable:
    with open(path, encoding="utf-8") as fh:
        return step_table_from_text(fh.read())


def default_step_table() -> StepTable:
    """The shipped unit-cell cycle program (see module docstring)."""
    text = resources.files("spiderweb.data").joinpath("unit_cell_cycle.steps").read_text("utf-8")
    return step_table_from_text(text)


# ---------------------------------------------------------------------------
# Array initialization

def initialization_schedule(cfg: ArrayConfig) -> EventTrace:
    """Two-phase electron loading of a unit cell.

    Each full operation region first initializes a data qubit (shuttled to
    its idle vertex), then the cycle ancilla (shuttled likewise) and finally
    the readout ancilla, which stays resident at the region's sensing dot.
    Every idle vertex is populated exactly once.
    """
    validate_config(cfg).raise_if_invalid()
    plan = (("op1", "D1", "A1", "RO1"), ("op2", "D2", "A2", "RO2"))
    events: list[Event] = []
    # Phase 1: data qubits, all regions in parallel.
    for region, data, _anc, _ro in plan:
        events.append(Event(0.0, 1, data, "load", region))
        events.append(Event(1.0, 1, data, "shuttle_back", _channel(data, region)))
    # Phase 2: cycle ancillas, then the resident readout ancillas.
    for region, _data, anc, ro in plan:
        events.append(Event(2.0, 2, anc, "load", region))
        events.append(Event(3.0, 2, anc, "shuttle_back", _channel(anc, region)))
        events.append(Event(4.0, 2, ro, "load", region))
    counters = {
        "qubit_loads": 4,
        "readout_ancilla_loads": len(plan),
        "idle_regions_populated": 4,
    }
    return EventTrace(tuple(events), counters, makespan_s=4.0)


# ---------------------------------------------------------------------------
# Crossbar patch addressing

@dataclass(frozen=True)
class PatchRect:
    """A rectangle of unit cells disabled through one crossbar.

    Row/column ranges are half-open, in unit-cell coordinates.
    """

    row_start: int
    row_stop: int
    col_start: int
    col_stop: int
    crossbar: int

    def validate(self, plane_edge_cells: int | None = None) -> None:
        if self.row_start >= self.row_stop or self.col_start >= self.col_stop:
            raise PatchError(f"empty patch rectangle {self}")
        if self.row_start < 0 or self.col_start < 0:
            raise PatchError(f"patch rectangle {self} has negative coordinates")
        if plane_edge_cells is not None and (
            self.row_stop > plane_edge_cells or self.col_stop > plane_edge_cells
        ):
            raise PatchError(
                f"patch rectangle {self} exceeds the {plane_edge_cells}-cell plane edge"
            )

    def contains(self, cell: tuple[int, int]) -> bool:
        row, col = cell
        return self.row_start <= row < self.row_stop and self.col_start <= col < self.col_stop

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(range(self.row_start, self.row_stop))

    @property
    def cols(self) -> tuple[int, ...]:
        return tuple(range(self.col_start, self.col_stop))


@dataclass(frozen=True)
class CrossbarAssignment:
    active_rows: dict[int, tuple[int, ...]]   # crossbar -> row lines driven
    active_cols: dict[int, tuple[int, ...]]   # crossbar -> column lines driven
    disabled_cells: frozenset[tuple[int, int]]


def patches_to_crossbars(patches: tuple[PatchRect, ...] | list[PatchRect], cfg: ArrayConfig) -> CrossbarAssignment:
    """Map patch rectangles onto crossbar row/column lines.

    With no patches nothing is disabled and the error-correction cycle runs
    on the whole array.  At most ``cfg.crossbars`` patches may be active at
    once, each on its own crossbar.
    """
    validate_config(cfg).raise_if_invalid()
    if len(patches) > cfg.crossbars:
        raise PatchError(
            f"{len(patches)} patches requested but only {cfg.crossbars} crossbar(s) available"
        )
    edge = cfg.plane_edge_cells
    rows: dict[int, tuple[int, ...]] = {}
    cols: dict[int, tuple[int, ...]] = {}
    disabled: set[tuple[int, int]] = set()
    for patch in patches:
        patch.validate(edge)
        if not 0 <= patch.crossbar < cfg.crossbars:
            raise PatchError(f"crossbar index {patch.crossbar} out of range 0..{cfg.crossbars - 1}")
        if patch.crossbar in rows:
            raise PatchError(f"crossbar {patch.crossbar} assigned to more than one patch")
        rows[patch.crossbar] = patch.rows
        cols[patch.crossbar] = patch.cols
        disabled.update((r, c) for r in patch.rows for c in patch.cols)
    return CrossbarAssignment(rows, cols, frozenset(disabled))
