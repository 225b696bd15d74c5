"""Command-line interface: exit codes, JSON payload shapes, determinism,
and the text renderings, all exercised in process."""
import json
from fractions import Fraction

import pytest

from capclass.adelic import AdelicSet
from capclass.capacity import CapacityReport
from capclass.cli import main
from capclass.lattice import AuxiliaryLine

CENSUS_FLAGS = ["--n", "101", "--t", "69", "--a", "36",
                "--X", "sqrt(101/4)", "--Y", "sqrt(101/4)"]


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_analyze_json_payload(capsys):
    rc, out, err = run(capsys, ["analyze", *CENSUS_FLAGS, "--check-oracle"])
    assert rc == 0
    payload = json.loads(out)
    assert set(payload) == {"instance", "line", "adelic", "capacity",
                            "verdict", "oracle"}
    assert payload["verdict"]["kind"] == "METHOD_CANNOT_SUCCEED"
    line = AuxiliaryLine.from_json(payload["line"])
    assert (line.d1, line.d2, line.d3, line.n) == (3, 5, 7, 101)
    AdelicSet.from_json(payload["adelic"])          # parses and validates
    CapacityReport.from_json(payload["capacity"])
    assert payload["oracle"]["raw"] == 2
    assert payload["oracle"]["line_vanishes_on_all"] is True
    assert "elapsed_ms=" in err


def test_analyze_text_format(capsys):
    rc, out, _ = run(capsys, ["analyze", *CENSUS_FLAGS, "--format", "text"])
    assert rc == 0
    assert "verdict: METHOD_CANNOT_SUCCEED" in out
    assert "line: (3*x + 5*y + 7)/101" in out


def test_analyze_instance_from_file(capsys, tmp_path):
    spec = {"n": 101, "t": 69, "a": 36, "X": "sqrt(101/4)", "Y": "sqrt(101/4)"}
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(spec))
    rc, out, _ = run(capsys, ["analyze", "--json", str(path)])
    assert rc == 0
    assert json.loads(out)["verdict"]["kind"] == "METHOD_CANNOT_SUCCEED"


def test_analyze_line_not_found_guidance(capsys):
    rc, out, _ = run(capsys, ["analyze", "--n", "101", "--t", "5", "--a", "1",
                              "--X", "30", "--Y", "30"])
    assert rc == 1
    payload = json.loads(out)
    assert payload["error"] == "LineNotFound"
    assert payload["guidance"]["box_feasible"] is False
    assert payload["guidance"]["threshold"] == "101/27"


def test_analyze_missing_flags(capsys):
    rc, _, err = run(capsys, ["analyze", "--n", "101"])
    assert rc == 1
    assert "missing flags" in err


def test_malformed_bound_is_an_error(capsys):
    rc, _, err = run(capsys, ["analyze", *CENSUS_FLAGS[:-2], "--Y", "1/0"])
    assert rc == 1
    assert "cannot parse Y=" in err


def test_hnp_certified(capsys):
    rc, out, _ = run(capsys, ["hnp", "--c0", "3", "--d0", "7", "--c1", "5",
                              "--d1", "11", "--n", "101", "--X", "4",
                              "--check-oracle"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["status"] == "AT_MOST_ONE"
    assert payload["oracle"] == {"secret_count": 1, "consistent": True}
    assert payload["samples"]["X"] == "4"


def test_hnp_inconclusive_exits_2(capsys):
    rc, out, _ = run(capsys, ["hnp", "--c0", "3", "--d0", "7", "--c1", "5",
                              "--d1", "11", "--n", "101", "--X", "30"])
    assert rc == 2
    assert json.loads(out)["status"] == "INCONCLUSIVE"


def test_census_output_is_byte_deterministic(capsys):
    argv = ["census", "--p", "10007", "--c", "1/2", "--samples", "15",
            "--seed", "7"]
    rc1, out1, _ = run(capsys, argv)
    rc2, out2, _ = run(capsys, argv)
    assert rc1 == rc2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["sample_size"] == 15
    assert payload["lambda_injective"] is True
    assert len(payload["records"]) == 15


def test_census_zero_box(capsys):
    rc, out, _ = run(capsys, ["census", "--p", "10007", "--c", "1/2",
                              "--z", "1/32", "--box", "zero",
                              "--samples", "10", "--no-records"])
    assert rc == 0
    payload = json.loads(out)
    assert "records" not in payload
    assert payload["box"] == {"d1": [2, 5], "d2": [1, 1], "d3": [301, 312]}
    assert payload["fraction_gamma_zero"] == "1"


def test_census_text_format(capsys):
    rc, out, _ = run(capsys, ["census", "--p", "101", "--c", "1/2",
                              "--samples", "5", "--format", "text"])
    assert rc == 0
    assert out.startswith("census p=101")
    assert "lambda injective: True" in out


def test_census_rejects_composite_modulus(capsys):
    rc, _, err = run(capsys, ["census", "--p", "10008", "--c", "1/2"])
    assert rc == 1
    assert "not prime" in err


def test_search_ndjson(capsys):
    rc, out, err = run(capsys, ["search", *CENSUS_FLAGS])
    assert rc == 0
    rows = [json.loads(row) for row in out.splitlines()]
    assert rows == [{"x": [-4, 0], "y": [1, 0]}, {"x": [1, 0], "y": [-2, 0]}]
    assert "solutions: raw=2 nonzero=2 ring=Z" in err


def test_search_other_ring(capsys):
    rc, out, _ = run(capsys, ["search", *CENSUS_FLAGS, "--ring", "gauss"])
    assert rc == 0
    assert len(out.splitlines()) == 2


def test_capacity_command(capsys):
    rc, out, _ = run(capsys, ["capacity", "--r", "1", "--s", "1",
                              "--check-oracle", "--fekete", "50"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["case"] == "lens"
    assert abs(float(Fraction(payload["capacity"]["lo"])) - 0.649519052838329) < 1e-12
    assert float(payload["oracle"]["abs_error_vs_midpoint"]) < 2e-2
    rc, out, _ = run(capsys, ["capacity", "--r", "5/2", "--s", "1"])
    assert json.loads(out)["case"] == "disk1"


def test_bound_command(capsys):
    rc, out, _ = run(capsys, ["bound", "--n", "1000", "--X", "1", "--Y", "3"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["feasible"] is True
    assert payload["threshold"] == "1000/27"
    assert payload["optimal_box"] == ["1/3", "1/9", "1/3"]
    rc, out, _ = run(capsys, ["bound", "--n", "100", "--X", "2", "--Y", "2"])
    assert json.loads(out)["feasible"] is False


def test_unknown_command_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_no_command_prints_help(capsys):
    rc, _, err = run(capsys, [])
    assert rc == 1
    assert "usage: capclass" in err
