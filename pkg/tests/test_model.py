import pytest

from spiderweb.errors import InvalidConfigError
from spiderweb.model import (
    ArrayConfig,
    GateInventory,
    RegionGates,
    default_gate_inventory,
    derive_geometry,
    validate_config,
)

REFERENCE = ArrayConfig()


def test_reference_config_is_valid():
    report = validate_config(REFERENCE)
    assert report.ok
    assert report.violations == ()


def test_minimal_config_is_valid():
    cfg = ArrayConfig(
        bias_module_edge=1, bias_grid_edge=1,
        readout_module_edge=1, readout_grid_edge=1,
        sequential_readouts=1, parallel_readouts=1,
    )
    assert validate_config(cfg).ok


def test_mismatched_tilings_reported():
    cfg = REFERENCE.with_updates(readout_grid_edge=100)
    report = validate_config(cfg)
    assert not report.ok
    assert len(report.violations) == 1
    assert "512 != " in report.violations[0]
    with pytest.raises(InvalidConfigError):
        report.raise_if_invalid()


def test_uncovered_readout_split_reported():
    cfg = REFERENCE.with_updates(sequential_readouts=3)
    report = validate_config(cfg)
    assert any("multiplexing split" in v for v in report.violations)


def test_nonpositive_fields_reported():
    cfg = REFERENCE.with_updates(code_distance=0, crossbars=-1)
    report = validate_config(cfg)
    assert len(report.violations) == 2


def test_validation_never_raises_on_bad_config():
    cfg = ArrayConfig(qubit_pitch_nm=0, bias_module_edge=-3)
    assert not validate_config(cfg).ok


def test_reference_geometry():
    geo = derive_geometry(REFERENCE)
    assert geo.unit_cells == 262144
    assert geo.qubit_count == 1048576
    # (2 * 13 um * 512)^2
    assert geo.plane_area_mm2 == pytest.approx(177.209344, rel=1e-12)
    assert geo.plane_edge_um == pytest.approx(13312.0)
    assert geo.plane_perimeter_um == pytest.approx(4 * 13312.0)
    assert geo.gates_per_arm == 260


def test_single_cell_geometry():
    cfg = ArrayConfig(
        bias_module_edge=1, bias_grid_edge=1,
        readout_module_edge=1, readout_grid_edge=1,
        sequential_readouts=1, parallel_readouts=1,
    )
    geo = derive_geometry(cfg)
    assert geo.unit_cells == 1
    assert geo.qubit_count == 4
    assert geo.plane_edge_um == pytest.approx(26.0)
    assert geo.plane_area_m2 == pytest.approx((26e-6) ** 2)


def test_geometry_rejects_invalid_config():
    with pytest.raises(InvalidConfigError):
        derive_geometry(REFERENCE.with_updates(readout_grid_edge=100))


@pytest.mark.parametrize("edges", [(1, 1), (4, 4), (32, 16), (7, 3)])
def test_unit_cell_count_is_square_of_edges(edges):
    n_b, m_b = edges
    cfg = ArrayConfig(
        bias_module_edge=n_b, bias_grid_edge=m_b,
        readout_module_edge=1, readout_grid_edge=n_b * m_b,
        sequential_readouts=1, parallel_readouts=1,
    )
    assert derive_geometry(cfg).unit_cells == (n_b * m_b) ** 2


def test_area_scales_quadratically_in_pitch():
    base = derive_geometry(REFERENCE).plane_area_m2
    doubled = derive_geometry(REFERENCE.with_updates(qubit_pitch_nm=26_000)).plane_area_m2
    assert doubled == pytest.approx(4 * base, rel=1e-12)


def test_gates_per_arm_floor_division():
    cfg = REFERENCE.with_updates(gate_pitch_nm=51)
    assert derive_geometry(cfg).gates_per_arm == 13_000 // 51


class TestGateInventory:
    def test_reference_rows(self):
        inv = default_gate_inventory()
        by_kind = {r.region_kind: r for r in inv.rows}
        idle = by_kind["qubit_idling"]
        assert (idle.regions_per_unit_cell, idle.fine_gates, idle.coarse_gates, idle.pulsed_gates) == (4, 0, 4, 4)
        op = by_kind["qubit_operation"]
        assert (op.regions_per_unit_cell, op.fine_gates, op.coarse_gates, op.pulsed_gates) == (2, 7, 2, 6)
        two = by_kind["two_qubit_only"]
        assert (two.regions_per_unit_cell, two.fine_gates, two.coarse_gates, two.pulsed_gates) == (6, 3, 2, 5)

    def test_reference_totals(self):
        inv = default_gate_inventory()
        assert inv.fine_total == 32
        assert inv.coarse_total == 32
        assert inv.pulsed_total == 58
        assert inv.dc_biased_total == 64

    def test_totals_are_weighted_sums(self):
        inv = default_gate_inventory()
        assert inv.fine_total == sum(r.regions_per_unit_cell * r.fine_gates for r in inv.rows)
        assert inv.coarse_total == sum(r.regions_per_unit_cell * r.coarse_gates for r in inv.rows)
        assert inv.pulsed_total == sum(r.regions_per_unit_cell * r.pulsed_gates for r in inv.rows)

    def test_alternate_inventory_is_recomputed(self):
        inv = GateInventory((RegionGates("custom", 3, 2, 1, 5),))
        assert inv.fine_total == 6
        assert inv.coarse_total == 3
        assert inv.pulsed_total == 15
