"""Command-line surface: formats, determinism, exit codes."""

import csv
import io
import json

import pytest

from charspline.cli import main
from charspline.engine import lambda_det
from charspline.exact import Rat


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lambda_json_roundtrip(capsys):
    code, out, err = _run(
        capsys, "lambda", "--series", "C", "--nu", "2,1", "--N", "3", "--K", "2"
    )
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["series"] == "C" and doc["nu"] == [2, 1, 0]
    want = lambda_det((2, 1, 0), 3, 2, "C")
    got = {tuple(e["kappa"]): Rat(e["p"]) for e in doc["weights"]}
    assert got == want


def test_lambda_csv_headers_and_sum(capsys):
    code, out, _ = _run(
        capsys, "lambda", "--series", "b", "--nu", "1", "--N", "2", "--K", "1",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kappa", "p", "decimal"]
    assert sum(Rat(r[1]) for r in rows[1:]) == 1


def test_lambda_general_parameters(capsys):
    code, out, _ = _run(
        capsys, "lambda", "--a", "0", "--eps", "1/2", "--nu", "1,0", "--N", "2",
        "--K", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["series"] == "general" and doc["a"] == "0" and doc["b"] == "0"


def test_sample_is_deterministic_and_supported(capsys):
    args = ("sample", "--series", "D", "--nu", "2,1,0", "--N", "3", "--K", "2",
            "--seed", "42", "--count", "50")
    code1, out1, _ = _run(capsys, *args)
    code2, out2, _ = _run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    support = set(lambda_det((2, 1, 0), 3, 2, "D"))
    drawn = {tuple(int(x) for x in line.split(",")) for line in out1.splitlines()}
    assert drawn <= support


def test_sample_zero_signature_is_constant(capsys):
    code, out, _ = _run(
        capsys, "sample", "--series", "C", "--nu", "0", "--N", "2", "--K", "1",
        "--count", "5",
    )
    assert code == 0
    assert out.splitlines() == ["0"] * 5


def test_spline_table(capsys):
    code, out, _ = _run(capsys, "spline", "--knots", "3,1,0")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "p", "decimal"]
    ks = [int(r[0]) for r in rows[1:]]
    assert ks == list(range(1, 4))
    assert sum(Rat(r[1]) for r in rows[1:]) == 1


def test_spline_from_signature_matches_knots(capsys):
    _, from_nu, _ = _run(capsys, "spline", "--nu", "3,2,0", "--N", "3")
    _, from_knots, _ = _run(capsys, "spline", "--knots", "3,1,-2")
    assert from_nu == from_knots


def test_basis_tables(capsys):
    code, out, _ = _run(capsys, "basis", "--series", "C", "--L", "2",
                        "--maxk", "3", "--maxm", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["L"] == 2 and doc["eps"] == "1"
    assert len(doc["g"]) == 4
    from charspline.basis import E_closed

    for entry in doc["E"]:
        assert Rat(entry["p"]) == E_closed("C", entry["m"], entry["k"], 2)


def test_verify_subset_passes(capsys):
    code, out, _ = _run(capsys, "verify", "--only", "telescoping,structure")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and all(line.startswith("PASS") for line in lines)


def test_verify_names_the_winning_convention(capsys):
    code, out, _ = _run(capsys, "verify", "--only", "d-k-normalization")
    assert code == 0
    assert "normalized" in out


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    import charspline.cli as cli

    monkeypatch.setattr(cli, "run_suites", lambda caps, only=None: [("x", False, "boom")])
    monkeypatch.setattr(cli, "SUITES", (("x", None),))
    code, out, _ = _run(capsys, "verify", "--only", "x")
    assert code == 1
    assert out.startswith("FAIL x")


def test_exit_two_on_domain_errors(capsys):
    code, _, err = _run(capsys, "lambda", "--series", "C", "--nu", "1,2",
                        "--N", "3", "--K", "1")
    assert code == 2 and "signature" in err
    code, _, err = _run(capsys, "lambda", "--nu", "1,0", "--N", "2", "--K", "1")
    assert code == 2 and "series" in err
    code, _, err = _run(capsys, "verify", "--only", "nonexistent-suite")
    assert code == 2


def test_unknown_series_tag(capsys):
    code, _, err = _run(capsys, "lambda", "--series", "Q", "--nu", "1",
                        "--N", "2", "--K", "1")
    assert code == 2 and "unknown series" in err
