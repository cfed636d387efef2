"""Array configuration, consistency checks and derived geometry.

The quantum plane is a square lattice of four-qubit unit cells.  Unit cells
are grouped into modules twice over: DC-biasing modules (``bias_module_edge``
cells on a side, ``bias_grid_edge`` modules on a side) and readout modules
(``readout_module_edge`` / ``readout_grid_edge``).  Both tilings must cover
the same plane, and a readout module must be exactly covered by the
sequential/parallel readout split.

Lengths that enter pitch arithmetic (qubit pitch, gate pitch, interconnect
pitch) are stored as integer nanometres so derived counts stay exact;
reports convert to µm/mm².
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InvalidConfigError

__all__ = [
    "ArrayConfig",
    "GateInventory",
    "GeometrySummary",
    "RegionGates",
    "ValidationReport",
    "default_gate_inventory",
    "derive_geometry",
    "validate_config",
]


@dataclass(frozen=True)
class ArrayConfig:
    """All architectural free parameters of a spiderweb array.

    Defaults describe the million-qubit reference design: 13 µm qubit pitch,
    1024-cell biasing modules in a 16x16 grid, 16-cell readout modules with a
    4-sequential / 4-parallel multiplexing split, code distance 16 and a
    12-layer 80 nm interconnect stack.
    """

    qubit_pitch_nm: int = 13_000
    gate_pitch_nm: int = 50
    bias_module_edge: int = 32
    bias_grid_edge: int = 16
    readout_module_edge: int = 4
    readout_grid_edge: int = 128
    sequential_readouts: int = 4
    parallel_readouts: int = 4
    crossbars: int = 0
    code_distance: int = 16
    metal_layers: int = 12
    interconnect_pitch_nm: int = 80

    @property
    def qubit_pitch_m(self) -> float:
        return self.qubit_pitch_nm * 1e-9

    @property
    def gate_pitch_m(self) -> float:
        return self.gate_pitch_nm * 1e-9

    @property
    def interconnect_pitch_m(self) -> float:
        return self.interconnect_pitch_nm * 1e-9

    @property
    def plane_edge_cells(self) -> int:
        """Unit cells along one side of the quantum plane."""
        return self.bias_module_edge * self.bias_grid_edge

    def with_updates(self, **kwargs) -> "ArrayConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise InvalidConfigError(self.violations)


def validate_config(cfg: ArrayConfig) -> ValidationReport:
    """Collect every violated invariant; an empty report means consistent.

    Validation never raises; callers that need a hard failure use
    :meth:`ValidationReport.raise_if_invalid`.
    """
    v: list[str] = []
    positive = [
        ("qubit_pitch_nm", cfg.qubit_pitch_nm),
        ("gate_pitch_nm", cfg.gate_pitch_nm),
        ("bias_module_edge", cfg.bias_module_edge),
        ("bias_grid_edge", cfg.bias_grid_edge),
        ("readout_module_edge", cfg.readout_module_edge),
        ("readout_grid_edge", cfg.readout_grid_edge),
        ("sequential_readouts", cfg.sequential_readouts),
        ("parallel_readouts", cfg.parallel_readouts),
        ("code_distance", cfg.code_distance),
        ("metal_layers", cfg.metal_layers),
        ("interconnect_pitch_nm", cfg.interconnect_pitch_nm),
    ]
    for name, value in positive:
        if value <= 0:
            v.append(f"{name} must be strictly positive (got {value})")
    if cfg.crossbars < 0:
        v.append(f"crossbars must be non-negative (got {cfg.crossbars})")

    bias_edge = cfg.bias_module_edge * cfg.bias_grid_edge
    readout_edge = cfg.readout_module_edge * cfg.readout_grid_edge
    if bias_edge != readout_edge:
        v.append(
            "bias and readout tilings cover different plane edges: "
            f"bias_module_edge*bias_grid_edge = {bias_edge} != "
            f"readout_module_edge*readout_grid_edge = {readout_edge}"
        )
    cells = cfg.readout_module_edge**2
    split = cfg.sequential_readouts * cfg.parallel_readouts
    if cells != split:
        v.append(
            "readout module not covered by the multiplexing split: "
            f"readout_module_edge^2 = {cells} != "
            f"sequential_readouts*parallel_readouts = {split}"
        )
    return ValidationReport(tuple(v))


@dataclass(frozen=True)
class GeometrySummary:
    unit_cells: int
    qubit_count: int
    plane_edge_m: float
    plane_area_m2: float
    plane_perimeter_m: float
    gates_per_arm: int

    @property
    def plane_edge_um(self) -> float:
        return self.plane_edge_m * 1e6

    @property
    def plane_area_mm2(self) -> float:
        return self.plane_area_m2 * 1e6

    @property
    def plane_perimeter_um(self) -> float:
        return self.plane_perimeter_m * 1e6


def derive_geometry(cfg: ArrayConfig) -> GeometrySummary:
    """Counts, areas and perimeters implied by a valid configuration.

    A unit cell holds 4 qubits on a 2x2 vertex grid, so a plane of E cells
    per side spans an edge of 2*pitch*E, an area of (2*pitch*E)^2 and a
    perimeter of 8*pitch*E.
    """
    validate_config(cfg).raise_if_invalid()
    edge_cells = cfg.plane_edge_cells
    unit_cells = edge_cells**2
    plane_edge = 2.0 * cfg.qubit_pitch_m * edge_cells
    return GeometrySummary(
        unit_cells=unit_cells,
        qubit_count=4 * unit_cells,
        plane_edge_m=plane_edge,
        plane_area_m2=plane_edge**2,
        plane_perimeter_m=4.0 * plane_edge,
        gates_per_arm=cfg.qubit_pitch_nm // cfg.gate_pitch_nm,
    )


@dataclass(frozen=True)
class RegionGates:
    """Gate electrode counts for one kind of operation region."""

    region_kind: str
    regions_per_unit_cell: int
    fine_gates: int
    coarse_gates: int
    pulsed_gates: int


@dataclass(frozen=True)
class GateInventory:
    """Per-unit-cell gate counts split by biasing class.

    Fine and coarse gates carry a locally held DC bias (1 µV and 1 mV
    resolution classes); pulsed gates are driven by globally shared AC
    signals and need no hold capacitor.
    """

    rows: tuple[RegionGates, ...]

    @property
    def fine_total(self) -> int:
        return sum(r.regions_per_unit_cell * r.fine_gates for r in self.rows)

    @property
    def coarse_total(self) -> int:
        return sum(r.regions_per_unit_cell * r.coarse_gates for r in self.rows)

    @property
    def pulsed_total(self) -> int:
        return sum(r.regions_per_unit_cell * r.pulsed_gates for r in self.rows)

    @property
    def dc_biased_total(self) -> int:
        return self.fine_total + self.coarse_total


# Reference unit cell: 4 qubit-idling regions, 2 full operation regions
# (single-qubit control, exchange and readout) and 6 exchange-only regions.
_DEFAULT_INVENTORY_ROWS = (
    RegionGates("qubit_idling", 4, 0, 4, 4),
    RegionGates("qubit_operation", 2, 7, 2, 6),
    RegionGates("two_qubit_only", 6, 3, 2, 5),
)


def default_gate_inventory() -> GateInventory:
    """Gate inventory of the reference unit cell (32 fine / 32 coarse / 58 pulsed)."""
    return GateInventory(_DEFAULT_INVENTORY_ROWS)
