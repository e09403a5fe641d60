import io
import subprocess
import sys

import pytest

from hyperbound import cli, verify


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return [line.split(",") for line in text.splitlines()]


def test_count_hyperbolic():
    code, out, _ = run("count", "--family", "hyperbolic", "--n", "3", "--q", "2")
    assert code == 0
    assert out == "family,n,q,d,count\nhyperbolic,3,2,2,9\n"


def test_count_hermitian():
    code, out, _ = run("count", "--family", "hermitian", "--n", "3", "--q", "4")
    assert code == 0 and rows(out)[1] == ["hermitian", "3", "4", "3", "45"]


def test_count_hermitian_needs_square_q():
    code, out, err = run("count", "--family", "hermitian", "--n", "3", "--q", "2")
    assert code == 2 and out == ""
    assert "q must be a square" in err


def test_count_over_extension_and_form():
    code, out, _ = run("count", "--form", "X0*X1+X2*X3", "--n", "3", "--q", "2", "--s", "2")
    assert code == 0
    assert rows(out) == [["family", "n", "q", "d", "count", "s"], ["form", "3", "2", "2", "25", "2"]]


def test_bounds_rows():
    code, out, _ = run("bounds", "--n", "3", "--d", "2", "--q", "2")
    assert code == 0
    table = {r[0]: r for r in rows(out)[1:]}
    assert table["main"][2] == "9"
    assert table["thas"][2] == "31/3"
    assert table["even"][2] == "NA"
    code, out, _ = run("bounds", "--n", "3", "--d", "3", "--q", "4")
    assert [r[0] for r in rows(out)[1:]] == ["main", "sss", "phi", "thas", "even", "conjecture"]
    assert {r[0]: r[2] for r in rows(out)[1:]}["main"] == "45"


def test_kmax_and_singular():
    code, out, _ = run("kmax", "--family", "hyperbolic", "--n", "3", "--q", "3")
    assert code == 0 and out == "family,n,q,k\nhyperbolic,3,3,1\n"
    code, out, _ = run("singular", "--form", "X0*X1", "--n", "2", "--q", "3", "--s-max", "2")
    assert code == 0 and rows(out)[1:] == [["form", "2", "3", "2", "1", "0 0 1"]]
    code, out, _ = run("singular", "--family", "hyperbolic", "--n", "3", "--q", "2")
    assert code == 0 and out == "family,n,q,s_max,s,point\n"


def test_catalog_lists_families():
    code, out, _ = run("catalog", "--q", "2", "--n", "3")
    assert code == 0
    fams = [r[0] for r in rows(out)[1:]]
    assert "hyperbolic" in fams and "filling" in fams and "hermitian" not in fams
    code, out, _ = run("catalog", "--q", "4", "--n", "3", "--family", "hermitian")
    assert rows(out)[1][:5] == ["hermitian", "3", "4", "3", "45"]


def test_type_s_default_and_explicit_subspace():
    code, out, _ = run("type-s", "--family", "hermitian", "--n", "3", "--q", "4")
    assert code == 0
    r = rows(out)[1]
    assert r[4] == "1" and r[5] == "0" and r[6] == "13"
    code, out, _ = run("type-s", "--form", "X0*X1", "--n", "3", "--q", "2", "--subspace", "0 1 0 0|0 0 1 0|0 0 0 1")
    assert code == 0 and rows(out)[1][4:6] == ["0", "1"]


def test_compare_thas():
    code, out, _ = run("compare-thas", "--m", "3", "--k", "1", "--d", "2", "--q", "2")
    assert code == 0 and rows(out)[1] == ["3", "1", "2", "2", "9", "31/3", "4/3", "4/3", "1"]
    code, out, _ = run("compare-thas", "--sweep")
    body = rows(out)[1:]
    assert len(body) == 100 and all(r[-1] == "1" and r[6] == r[7] for r in body)


def test_budget_exit_code():
    code, out, err = run("count", "--family", "filling", "--n", "9", "--q", "4", "--max-points", "1000")
    assert code == 3 and out == "" and "budget" in err


@pytest.mark.parametrize("argv", [
    ["count", "--n", "3", "--q", "2"],
    ["count", "--family", "hyperbolic", "--n", "3"],
    ["count", "--family", "hyperbolic", "--n", "3", "--q", "6"],
    ["count", "--family", "hyperbolic", "--n", "4", "--q", "2"],
    ["count", "--family", "nope", "--n", "3", "--q", "2"],
    ["count", "--form", "X0*X1+X2", "--n", "2", "--q", "2"],
    ["count", "--form", "X0*X1", "--family", "hyperbolic", "--n", "3", "--q", "2"],
    ["bounds", "--n", "3", "--q", "2"],
    ["compare-thas", "--m", "3", "--k", "1", "--d", "9", "--q", "2"],
    ["frobnicate"],
    ["count", "--family", "hyperbolic", "--n", "x", "--q", "2"],
    ["type-s", "--form", "X0*X1", "--n", "3", "--q", "2", "--subspace", "1 a"],
])
def test_usage_errors_exit_two(argv):
    code, out, _ = run(*argv)
    assert code == 2 and out == ""


def test_verify_exit_codes(monkeypatch):
    ok = lambda: verify.Result("AC0", "always", True, "fine")
    bad = lambda: verify.Result("AC9", "never", False, "broken")
    monkeypatch.setattr(verify, "CHECKS", [ok])
    code, out, err = run("verify")
    assert code == 0 and rows(out)[1][:3] == ["AC0", "always", "pass"]
    assert "PASS AC0" in err
    monkeypatch.setattr(verify, "CHECKS", [ok, bad])
    code, out, _ = run("verify")
    assert code == 1 and rows(out)[2][2] == "fail"


def test_output_is_deterministic_across_processes():
    argv = [sys.executable, "-m", "hyperbound.cli", "compare-thas", "--sweep"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"\r" not in a
    argv = [sys.executable, "-m", "hyperbound.cli", "count", "--family", "hermitian", "--n", "5", "--q", "4"]
    first = subprocess.run(argv, capture_output=True, check=True, env={"HYPERBOUND_THREADS": "1", "PATH": ""}).stdout
    again = subprocess.run(argv, capture_output=True, check=True, env={"HYPERBOUND_THREADS": "4", "PATH": ""}).stdout
    assert first == again == b"family,n,q,d,count\nhermitian,5,4,3,693\n"


def test_console_script_installed():
    out = subprocess.run(["hyperbound", "count", "--family", "hyperbolic", "--n", "3", "--q", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.endswith("hyperbolic,3,2,2,9\n")
