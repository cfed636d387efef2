import csv
import io
import json

import pytest

from spiderweb.cli import main

REPORT_DEFAULT_JSON = ["report", "--format", "json"]


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReport:
    def test_default_text_report(self, capsys):
        code, out, _ = run(capsys, "report")
        assert code == 0
        assert "rent exponent           0.43" in out
        assert "= 16836" in out
        assert "= 74" in out
        assert "pitch feasible        yes" in out

    def test_default_json_report(self, capsys):
        code, out, _ = run(capsys, *REPORT_DEFAULT_JSON)
        assert code == 0
        doc = json.loads(out)
        assert doc["lines"]["quantum_plane"]["total"] == 16836
        assert doc["lines"]["unit_cell"]["total"] == 74
        assert 0.43 <= doc["rent_exponent"] <= 0.44
        assert doc["capacity"] == {
            "defect": 682,
            "lattice_surgery": 1024,
            "fabrication_crossbar_limit": 1950,
        }
        assert doc["timing"]["mixed"]["cycle_s"] == pytest.approx(5.65e-6)
        # unpinned grid model still lands at order 100 mW for the array
        assert 0.05 <= doc["power"]["array"]["total_w"] <= 0.2

    def test_text_and_json_carry_same_values(self, capsys):
        _, text_out, _ = run(capsys, "report")
        _, json_out, _ = run(capsys, *REPORT_DEFAULT_JSON)
        doc = json.loads(json_out)
        assert f"unit cells            {doc['geometry']['unit_cells']}" in text_out
        assert f"rent exponent           {doc['rent_exponent']:.2f}" in text_out
        assert f"defect encoding       {doc['capacity']['defect']}" in text_out
        assert f"{doc['geometry']['plane_area_m2'] * 1e6:.4g} mm^2" in text_out

    def test_set_crossbars_moves_rent_exponent(self, capsys):
        code, out, _ = run(capsys, "report", "--set", "x=200", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert 0.49 <= doc["rent_exponent"] <= 0.50

    def test_pin_cp(self, capsys):
        code, out, _ = run(capsys, "report", "--pin-cp", "700fF", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["power"]["parasitic_pinned"] is True
        assert doc["power"]["used_parasitic_f"] == pytest.approx(700e-15)
        assert doc["power"]["array"]["pulsed_w"] == pytest.approx(91.75e-3, rel=1e-3)

    def test_csv_report(self, capsys):
        code, out, _ = run(capsys, "report", "--format", "csv")
        assert code == 0
        rows = dict((r[0], r[1]) for r in csv.reader(io.StringIO(out)) if r)
        assert rows["lines.quantum_plane.total"] == "16836"

    def test_config_file_and_line_diagnostics(self, capsys, tmp_path):
        good = tmp_path / "good.cfg"
        good.write_text("[array]\nx = 200\n")
        code, out, _ = run(capsys, "report", "--config", str(good), "--format", "json")
        assert code == 0
        assert json.loads(out)["config"]["array"]["crossbars"] == 200

        bad = tmp_path / "bad.cfg"
        bad.write_text("[array]\nx = 200\nwidth = 3\n")
        code, _, err = run(capsys, "report", "--config", str(bad))
        assert code == 1
        assert "line 3" in err

    def test_invalid_config_exits_1(self, capsys):
        code, _, err = run(capsys, "report", "--set", "m_r=100")
        assert code == 1
        assert "error" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "report", "--format", "json", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["lines"]["unit_cell"]["total"] == 74

    def test_report_is_deterministic(self, capsys):
        _, first, _ = run(capsys, *REPORT_DEFAULT_JSON)
        _, second, _ = run(capsys, *REPORT_DEFAULT_JSON)
        assert first == second


class TestSweep:
    def test_crossbar_sweep_monotone(self, capsys):
        code, out, _ = run(capsys, "sweep", "x", "0,10,100,1000", "--format", "json")
        assert code == 0
        records = json.loads(out)
        values = [r["rent_exponent"] for r in records]
        assert values == sorted(values)
        assert all(r["valid"] for r in records)

    def test_pitch_sweep_flips_feasibility(self, capsys):
        code, out, _ = run(capsys, "sweep", "d", "10um,13um,20um")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        flags = [r["pitch_feasible"] for r in rows]
        assert flags == ["False", "True", "True"]
        assert [r["value"] for r in rows] == ["10um", "13um", "20um"]

    def test_infeasible_points_kept(self, capsys):
        code, out, _ = run(capsys, "sweep", "m_r", "100,128", "--format", "json")
        assert code == 0
        records = json.loads(out)
        assert [r["valid"] for r in records] == [False, True]
        assert records[0]["rent_exponent"] is None
        assert "!=" in records[0]["violations"]

    def test_non_power_of_two_readout_flagged(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "x", "0,1", "--format", "json",
            "--set", "n_b=3", "--set", "m_b=2", "--set", "n_r=3",
            "--set", "m_r=2", "--set", "q=3", "--set", "r=3",
        )
        assert code == 0
        records = json.loads(out)
        assert all(not r["valid"] for r in records)
        assert all("power of two" in r["violations"] for r in records)

    def test_empty_value_list(self, capsys):
        code, out, _ = run(capsys, "sweep", "x", ",")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows == []

    def test_unknown_parameter_exits_1(self, capsys):
        code, _, err = run(capsys, "sweep", "qubits", "1,2")
        assert code == 1
        assert "unknown key" in err


class TestVerify:
    def test_clean_build_passes(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "all checks passed" in out

    def test_corrupt_hook_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--corrupt", "sp-sign")
        assert code == 2
        assert "FAIL" in out

    def test_dump_unitary_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "--dump-unitary", "sqrt_swap")
        assert code == 0
        doc = json.loads(out)
        assert doc["gate"] == "sqrt_swap"
        assert doc["matrix"][1][1] == [0.5, 0.5]

    def test_json_residual_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        identity = [c for c in doc["checks"] if c["check"].startswith("identity:")]
        assert identity and all(c["residual"] < 1e-12 for c in identity)
        assert {c["check"] for c in doc["checks"]} >= {
            "plaquette:X",
            "plaquette:Z",
            "schedule:census",
            "schedule:steps-3-13-single-shuttle",
            "schedule:conflict-free",
        }


class TestSimulate:
    def test_summary(self, capsys):
        code, out, _ = run(capsys, "simulate")
        assert code == 0
        assert "shuttle round trips 22" in out
        assert "makespan            2.65 us" in out

    def test_csv_trace(self, capsys):
        code, out, _ = run(capsys, "simulate", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert {"time_s", "step", "qubit", "op", "resource"} == set(rows[0])
        assert any(r["op"] == "readout" for r in rows)

    def test_custom_table_conflict_exits_2(self, capsys, tmp_path):
        table = tmp_path / "bad.steps"
        table.write_text("1 one_qubit D1@op1:ry(-90) D2@op1:ry(-90) A1@op1:ry(-90)\n")
        code, _, err = run(capsys, "simulate", "--table", str(table))
        assert code == 2
        assert "step 1" in err and "op1" in err


class TestDumpUnitary:
    def test_sp_matrix(self, capsys):
        code, out, _ = run(capsys, "dump-unitary", "sp")
        assert code == 0
        doc = json.loads(out)
        assert doc["dim"] == 4
        assert doc["matrix"][1][1] == [0.0, 1.0]
        assert doc["matrix"][3][3] == [-1.0, 0.0]

    def test_rotation_with_angle(self, capsys):
        code, out, _ = run(capsys, "dump-unitary", "rz", "3.141592653589793")
        assert code == 0
        doc = json.loads(out)
        assert doc["matrix"][0][0][1] == pytest.approx(-1.0)

    def test_unknown_gate_exits_1(self, capsys):
        code, _, err = run(capsys, "dump-unitary", "toffoli")
        assert code == 1
        assert "unknown gate" in err
