import io
import json
import math
import subprocess
import sys

import pytest

from hypershell import cli, scan
from hypershell.model import PotentialParams


def invoke(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def test_spectrum_reference_row():
    code, text = invoke("spectrum", "--d", "3", "--w0", "-1.85", "--w1", "0.437", "--x0", "1")
    assert code == 0
    rows = text.strip().splitlines()
    assert rows[-1] == "N = 1"
    ell, kappa, lam, deg, n = rows[1].split()
    assert (ell, deg, n) == ("0", "1", "1")
    assert float(lam) == pytest.approx(-0.514, abs=1e-3)


def test_spectrum_empty_for_repulsive_delta():
    code, text = invoke("spectrum", "--d", "3", "--w0", "1.0", "--w1", "0.3", "--x0", "1")
    assert code == 0
    assert text.strip().splitlines()[1:] == ["N = 0"]


def test_spectrum_csv_and_json():
    args = ["spectrum", "--d", "2", "--w0", "-6", "--w1", "0.2", "--x0", "1.5"]
    code, text = invoke(*args, "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# params:")
    assert lines[1] == "ell,kappa,lambda,deg,N"
    code, text = invoke(*args, "--format", "json")
    record = json.loads(text)
    assert record["params"] == {"d": 2, "w0": -6.0, "w1": 0.2, "x0": 1.5}
    assert record["total_count"] == sum(s["degeneracy"] for s in record["states"])
    for s in record["states"]:
        assert s["lam"] == pytest.approx(-s["kappa"] ** 2, rel=1e-15)
    assert len(record["states"]) == len(lines) - 2


def test_phase_shift_rows():
    code, text = invoke("phase-shift", "--d", "3", "--l", "0", "--w0", "0", "--w1", "-1", "--x0", "1", "--k", "0.5:10:0.5", "--unwrap")
    assert code == 0
    lines = text.splitlines()
    assert lines[1] == "k,delta,re_s,im_s"
    rows = [[float(v) for v in line.split(",")] for line in lines[2:]]
    assert len(rows) == 20
    for k, delta, re_s, im_s in rows:
        # hard sphere, unwrapped: delta = -k x0
        assert delta == pytest.approx(-k, abs=1e-9)
        assert math.hypot(re_s, im_s) == pytest.approx(1, abs=1e-12)


def test_zero_mode():
    code, text = invoke("zero-mode", "--d", "3", "--l", "1", "--w1", "0", "--x0", "1")
    assert code == 0 and float(text) == pytest.approx(-3.0, rel=1e-15)
    code, text = invoke("zero-mode", "--d", "2", "--l", "0", "--w1", "0", "--x0", "1")
    assert code == 0 and text.strip() == "none (eta=3>0)"


def test_mean_radius():
    code, text = invoke("mean-radius", "--d", "3", "--l", "0", "--w0", "-1.85", "--w1", "0.437", "--x0", "1")
    assert code == 0 and float(text) > 0
    code, text = invoke("mean-radius", "--d", "3", "--l", "0", "--w0", "1", "--w1", "0.437", "--x0", "1")
    assert code == 0 and text.strip() == "NOSTATE"
    code, text = invoke("mean-radius", "--d", "3", "--l", "1", "--w0", "-3", "--w1", "0", "--x0", "1")
    assert code == 0 and text.strip() == "INF"


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--d", "3", "--w0", "1"],
        ["spectrum", "--d", "1", "--w0", "1", "--w1", "0", "--x0", "1"],
        ["spectrum", "--d", "3", "--w0", "1", "--w1", "0", "--x0", "-1"],
        ["phase-shift", "--d", "3", "--l", "0", "--w0", "0", "--w1", "0", "--x0", "1", "--k", "1:0:0.1"],
        ["scan", "--quantity", "energy", "--d", "3", "--w1", "0", "--x0", "1", "--sweep", "q=0:1:0.5"],
        ["scan", "--quantity", "energy", "--d", "3", "--w1", "0", "--sweep", "w0=0:1:0.5"],
        ["bogus"],
    ],
)
def test_argument_errors_exit_2(argv, capsys):
    code, text = invoke(*argv)
    assert code == 2
    assert text == ""
    assert capsys.readouterr().err


def test_numerical_failure_exits_3(monkeypatch, capsys):
    from hypershell import bound
    from hypershell.errors import ConvergenceError

    def broken(p):
        raise ConvergenceError("forced")

    monkeypatch.setattr(bound, "spectrum", broken)
    code, text = invoke("spectrum", "--d", "3", "--w0", "-5", "--w1", "0", "--x0", "1")
    assert code == 3 and text == ""
    assert "forced" in capsys.readouterr().err


def test_scan_fail_cell_exits_3(monkeypatch):
    monkeypatch.setattr(scan, "evaluate_cell", lambda q, pt: scan.FAIL)
    code, text = invoke("scan", "--quantity", "lmax", "--d", "3", "--w1", "0", "--x0", "1", "--sweep", "w0=0:1:0.5")
    assert code == 3
    assert text.splitlines()[2:] == ["0,FAIL", "0.5,FAIL", "1,FAIL"]


def test_scan_csv_round_trip():
    argv = ["scan", "--quantity", "mean_radius_ratio", "--d", "3", "--l", "1", "--x0", "1",
            "--sweep", "w0=-5:-2:0.5", "--sweep", "w1=-0.2:0.2:0.2"]
    code, text = invoke(*argv)
    assert code == 0
    grid = scan.read_csv(text)
    assert grid.shape == (7, 3)
    assert scan.write_csv(grid) == text
    assert scan.NOSTATE in grid.cells
    # w0 = -3, w1 = 0 sits on the eta = 0 zero-mode surface
    assert grid.cells[grid.points().index({"w0": -3.0, "w1": 0.0})] == "INF"


def test_scan_is_deterministic_and_parallel_safe():
    base = ["scan", "--quantity", "energy", "--d", "2", "--x0", "1.5", "--sweep", "w0=-6:0:0.5", "--sweep", "w1=-0.5:0.5:0.25"]
    _, serial = invoke(*base)
    _, again = invoke(*base)
    _, parallel = invoke(*base, "--jobs", "2")
    assert serial == again == parallel


def test_scan_values_match_library():
    code, text = invoke("scan", "--quantity", "count", "--d", "2", "--w1", "-0.1111111111111111", "--x0", "7",
                        "--sweep", "w0=-3.5:-2.5:0.5")
    grid = scan.read_csv(text)
    from hypershell import bound

    for pt, value in zip(grid.points(), grid.cells):
        expected = bound.spectrum(PotentialParams(2, pt["w0"], -0.1111111111111111, 7.0)).total_count
        assert value == expected


def test_scan_phase_and_zero_mode_boundary():
    code, text = invoke("scan", "--quantity", "phase_shift", "--d", "3", "--w0", "0", "--w1", "-1", "--x0", "1",
                        "--sweep", "k=0.5:1.5:0.5")
    assert code == 0
    grid = scan.read_csv(text)
    for pt, value in zip(grid.points(), grid.cells):
        diff = (value + pt["k"]) % math.pi
        assert min(diff, math.pi - diff) < 1e-9
    code, text = invoke("scan", "--quantity", "zero_mode_boundary", "--d", "3", "--l", "1", "--x0", "1",
                        "--sweep", "w1=-0.5:0.5:0.5")
    grid = scan.read_csv(text)
    assert grid.cells[1] == pytest.approx(-3.0)


def test_range_parsing():
    assert scan.range_values("0:1:0.25") == [0, 0.25, 0.5, 0.75, 1.0]
    # stop is included within half a step
    assert len(scan.range_values("0:1:0.3")) == 4
    assert len(scan.range_values("0:1.1:0.3")) == 5


def test_verify_passes(capsys):
    code, text = invoke("verify", "--trials", "3", "--seed", "7")
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 8
    assert all(line.startswith("PASS") for line in lines)


def test_verify_failure_exits_1(monkeypatch):
    from hypershell import verify

    bad = verify.CheckResult("forced", False, 1.0, 0.0)
    monkeypatch.setattr(verify, "run_checks", lambda trials, seed: iter([bad]))
    code, text = invoke("verify")
    assert code == 1
    assert text.startswith("FAIL forced")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hypershell", "zero-mode", "--d", "3", "--l", "1", "--w1", "0", "--x0", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert float(proc.stdout) == -3.0
