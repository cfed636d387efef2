"""Assembly of the full design report and of sweep records.

The report gathers every derived quantity for one configuration: geometry,
line counts at all three hierarchy levels, Rent's exponent, logical-qubit
capacities, electronics constraints, footprint, cycle timing and the power
budget.  Values are kept in SI units in the machine-readable document; the
text renderer converts to engineering units.
"""

from __future__ import annotations

import dataclasses
from typing import Any

from . import electronics, power, schedule, wiring
from .config import ToolConfig
from .errors import InvalidConfigError
from .model import default_gate_inventory, derive_geometry, validate_config
from .units import si_format

__all__ = ["build_report", "render_text", "sweep_record", "SWEEP_FIELDS"]


def build_report(config: ToolConfig, pinned_parasitic_f: float | None = None) -> dict[str, Any]:
    cfg = config.array
    validate_config(cfg).raise_if_invalid()
    inventory = default_gate_inventory()
    geometry = derive_geometry(cfg)
    lines = {level: wiring.lines_at(level, cfg).to_dict() for level in wiring.LEVELS}
    rent_p = wiring.rent_exponent(cfg)

    elec = config.electronics
    coarse_c = electronics.min_hold_capacitance("coarse", elec)
    fine_c = electronics.min_hold_capacitance("fine", elec)
    refresh = electronics.refresh_rate(elec, elec.fine_resolution_v)
    demux_clk = electronics.demux_clock(cfg, refresh)
    fp = electronics.footprint(cfg, elec, inventory)

    timing = config.timing
    cycles = {
        mode: schedule.cycle_time(timing, cfg, mode) for mode in schedule.READOUT_MODES
    }

    grid_c = power.parasitic_capacitance(config.interconnect)
    pw = power.total_power(
        cfg, config.interconnect, config.signals, elec,
        pinned_parasitic_f=pinned_parasitic_f,
    )

    return {
        "config": {
            "array": dataclasses.asdict(cfg),
            "electronics": dataclasses.asdict(elec),
            "timing": dataclasses.asdict(timing),
            "signals": dataclasses.asdict(config.signals.resolved(cfg)),
            "interconnect": dataclasses.asdict(config.interconnect),
        },
        "geometry": {
            "unit_cells": geometry.unit_cells,
            "qubit_count": geometry.qubit_count,
            "plane_edge_m": geometry.plane_edge_m,
            "plane_area_m2": geometry.plane_area_m2,
            "plane_perimeter_m": geometry.plane_perimeter_m,
            "gates_per_arm": geometry.gates_per_arm,
        },
        "lines": lines,
        "rent_exponent": rent_p,
        "capacity": {
            "defect": wiring.logical_qubit_capacity(cfg, "defect"),
            "lattice_surgery": wiring.logical_qubit_capacity(cfg, "lattice_surgery"),
            "fabrication_crossbar_limit": wiring.max_fab_crossbars(cfg),
        },
        "electronics": {
            "coarse_hold_capacitance_f": coarse_c,
            "fine_hold_capacitance_f": fine_c,
            "refresh_rate_hz": refresh,
            "demux_clock_hz": demux_clk,
        },
        "footprint": {
            "capacitor_area_m2": fp.capacitor_area_m2,
            "demux_area_m2": fp.demux_area_m2,
            "total_area_m2": fp.total_area_m2,
            "hold_capacitance_f": fp.hold_capacitance_f,
            "min_pitch_m": fp.min_pitch_m,
            "pitch_feasible": fp.pitch_feasible,
        },
        "timing": {
            mode: {
                "cycle_s": ct.total_s,
                "coherence_ratio": ct.coherence_ratio,
            }
            for mode, ct in cycles.items()
        },
        "power": {
            "grid_parasitic_f": grid_c.total_f,
            "used_parasitic_f": pw.parasitic_capacitance_f,
            "parasitic_pinned": pw.parasitic_pinned,
            "per_cell": {
                "pulsed_w": pw.pulsed_w,
                "demux_w": pw.demux_w,
                "line_w": pw.line_w,
            },
            "array": {
                "pulsed_w": pw.array_pulsed_w,
                "demux_w": pw.array_demux_w,
                "line_w": pw.array_line_w,
                "total_w": pw.total_w,
            },
            "line_constant_w_s2_per_v2": pw.line_constant_w_s2_per_v2,
        },
    }


def render_text(doc: dict[str, Any]) -> str:
    geo = doc["geometry"]
    cap = doc["capacity"]
    el = doc["electronics"]
    fp = doc["footprint"]
    pw = doc["power"]
    out: list[str] = []
    out.append("geometry")
    out.append(f"  unit cells            {geo['unit_cells']}")
    out.append(f"  qubits                {geo['qubit_count']}")
    out.append(f"  plane edge            {si_format(geo['plane_edge_m'], 'm')}")
    out.append(f"  plane area            {geo['plane_area_m2'] * 1e6:.4g} mm^2")
    out.append(f"  plane perimeter       {si_format(geo['plane_perimeter_m'], 'm')}")
    out.append(f"  gates per arm         {geo['gates_per_arm']}")
    out.append("line counts (dc/shuttle/pulsed/logical/readout = total)")
    for level in ("unit_cell", "module", "quantum_plane"):
        c = doc["lines"][level]
        out.append(
            f"  {level:<14}        {c['dc_biasing']}/{c['shuttling']}/{c['pulsed_mw']}"
            f"/{c['logical_ops']}/{c['readout']} = {c['total']}"
        )
    out.append(f"rent exponent           {doc['rent_exponent']:.2f}")
    out.append("logical qubit capacity")
    out.append(f"  defect encoding       {cap['defect']}")
    out.append(f"  lattice surgery       {cap['lattice_surgery']}")
    out.append(f"  crossbar fab limit    {cap['fabrication_crossbar_limit']}")
    out.append("electronics")
    out.append(f"  coarse hold cap       {si_format(el['coarse_hold_capacitance_f'], 'F')}")
    out.append(f"  fine hold cap         {si_format(el['fine_hold_capacitance_f'], 'F')}")
    out.append(f"  refresh rate          {si_format(el['refresh_rate_hz'], 'Hz')}")
    out.append(f"  demux clock           {si_format(el['demux_clock_hz'], 'Hz')}")
    out.append("footprint per unit cell")
    out.append(f"  hold capacitance      {si_format(fp['hold_capacitance_f'], 'F')}")
    out.append(f"  capacitor area        {fp['capacitor_area_m2'] * 1e12:.4g} um^2")
    out.append(f"  demux area            {fp['demux_area_m2'] * 1e12:.4g} um^2")
    out.append(f"  total area            {fp['total_area_m2'] * 1e12:.4g} um^2")
    out.append(f"  minimum pitch         {si_format(fp['min_pitch_m'], 'm')}")
    out.append(f"  pitch feasible        {'yes' if fp['pitch_feasible'] else 'NO'}")
    out.append("cycle time")
    for mode in ("parallel", "mixed", "sequential"):
        t = doc["timing"][mode]
        out.append(
            f"  {mode:<10}            {si_format(t['cycle_s'], 's')}"
            f"  (dephasing/cycle {t['coherence_ratio']:.2f})"
        )
    out.append("power")
    pinned = " (pinned)" if pw["parasitic_pinned"] else ""
    out.append(f"  parasitic cap         {si_format(pw['used_parasitic_f'], 'F')}{pinned}")
    out.append(f"  per cell pulsed       {si_format(pw['per_cell']['pulsed_w'], 'W')}")
    out.append(f"  per cell demux        {si_format(pw['per_cell']['demux_w'], 'W')}")
    out.append(f"  per cell line loss    {si_format(pw['per_cell']['line_w'], 'W')}")
    out.append(f"  array pulsed          {si_format(pw['array']['pulsed_w'], 'W')}")
    out.append(f"  array demux           {si_format(pw['array']['demux_w'], 'W')}")
    out.append(f"  array line loss       {si_format(pw['array']['line_w'], 'W')}")
    out.append(f"  array total           {si_format(pw['array']['total_w'], 'W')}")
    out.append(
        f"  line-loss constant    {pw['line_constant_w_s2_per_v2'] * 1e27:.4g} nW*ns^2/V^2"
    )
    return "\n".join(out) + "\n"


SWEEP_FIELDS = (
    "parameter",
    "value",
    "valid",
    "violations",
    "unit_cells",
    "lines_unit_cell",
    "lines_quantum_plane",
    "rent_exponent",
    "capacity_defect",
    "capacity_lattice_surgery",
    "crossbar_fab_limit",
    "min_pitch_um",
    "pitch_feasible",
    "cycle_mixed_s",
    "array_total_w",
)


def sweep_record(
    parameter: str,
    raw_value: str,
    config: ToolConfig,
    pinned_parasitic_f: float | None = None,
) -> dict[str, Any]:
    """One sweep-point record; infeasible or invalid points are flagged, not dropped."""
    record: dict[str, Any] = {f: None for f in SWEEP_FIELDS}
    record["parameter"] = parameter
    record["value"] = raw_value
    report_check = validate_config(config.array)
    record["valid"] = report_check.ok
    record["violations"] = "; ".join(report_check.violations)
    if not report_check.ok:
        return record
    try:
        doc = build_report(config, pinned_parasitic_f=pinned_parasitic_f)
    except InvalidConfigError as exc:
        # e.g. a swept readout edge that is not a power of two
        record["valid"] = False
        record["violations"] = str(exc)
        return record
    record.update(
        unit_cells=doc["geometry"]["unit_cells"],
        lines_unit_cell=doc["lines"]["unit_cell"]["total"],
        lines_quantum_plane=doc["lines"]["quantum_plane"]["total"],
        rent_exponent=doc["rent_exponent"],
        capacity_defect=doc["capacity"]["defect"],
        capacity_lattice_surgery=doc["capacity"]["lattice_surgery"],
        crossbar_fab_limit=doc["capacity"]["fabrication_crossbar_limit"],
        min_pitch_um=doc["footprint"]["min_pitch_m"] * 1e6,
        pitch_feasible=doc["footprint"]["pitch_feasible"],
        cycle_mixed_s=doc["timing"]["mixed"]["cycle_s"],
        array_total_w=doc["power"]["array"]["total_w"],
    )
    return record
