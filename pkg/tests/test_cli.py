from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from csmkit import cli

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def run(*argv):
    return cli.run([str(a) for a in argv])


# -- csl ------------------------------------------------------------------------


def test_csl_gaussian_json():
    code, out = run("csl", "--module", DATA / "square.json", "--map", DATA / "gaussian21.json", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["is_coincidence"] is True
    assert rep["sigma"] == rep["den"] == rep["den_inv"] == 5
    assert rep["checks"] and all(rep["checks"].values())
    assert rep["coset"] == "unit"


def test_csl_gaussian_text():
    code, out = run("csl", "--module", "builtin:square", "--map", DATA / "gaussian21.json")
    assert code == 0
    assert "sigma: 5" in out and "den: 5" in out and "FAIL" not in out


def test_csl_similarity_is_not_coincidence():
    code, out = run("csl", "--module", DATA / "square.json", "--map", DATA / "rot45.json", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["is_coincidence"] is False
    assert rep["coset"] == "sqrt2"
    assert "sigma" not in rep


def test_csl_csv():
    code, out = run("csl", "--module", "builtin:square", "--map", DATA / "gaussian21.json", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and rows[0]["sigma"] == "5" and "FAIL" not in rows[0]["checks"]


def test_csl_module_from_generators():
    code, out = run("csl", "--module", DATA / "xi8_index4.json", "--map", DATA / "gaussian21.json")
    # a 2x2 map does not fit a rank-4 module
    assert code == 2 and out.startswith("error:")


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run("csl", "--module", bad, "--map", DATA / "gaussian21.json")
    assert code == 2 and "malformed JSON" in out


def test_missing_file(tmp_path):
    code, _ = run("csl", "--module", tmp_path / "nope.json", "--map", DATA / "gaussian21.json")
    assert code == 2


def test_non_isometry_map_is_input_error(tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"kind": "coincidence", "matrix": [["2", "0"], ["0", "1"]]}))
    code, _ = run("csl", "--module", "builtin:square", "--map", f)
    assert code == 2


def test_unknown_builtin():
    code, out = run("ring", "--module", "builtin:nope")
    assert code == 2 and "unknown builtin" in out


def test_bad_arguments():
    code, _ = run("catalog", "--name", "square")
    assert code == 2


# -- catalog ----------------------------------------------------------------------


def test_catalog_square_csv():
    code, out = run("catalog", "--name", "square", "--max-sigma", 30, "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted({int(r["sigma"]) for r in rows}) == [1, 5, 13, 17, 25, 29]
    assert all(r["checks_passed"] == "True" for r in rows)


def test_catalog_cubic_json_all_odd():
    code, out = run("catalog", "--name", "cubic", "--max-sigma", 10, "--format", "json")
    assert code == 0
    entries = json.loads(out)["entries"]
    assert entries and all(e["sigma"] % 2 == 1 for e in entries)


def test_catalog_square_one_text_symmetries_only():
    code, out = run("catalog", "--name", "square", "--max-sigma", 1)
    assert code == 0
    assert "1 entries" in out and "identity(square)" in out


def test_catalog_unknown_name():
    code, _ = run("catalog", "--name", "diamond", "--max-sigma", 5)
    assert code == 2


def test_catalog_bad_sigma():
    code, _ = run("catalog", "--name", "square", "--max-sigma", 0)
    assert code == 2


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_catalog_output_byte_identical(fmt):
    a = run("catalog", "--name", "hexagonal", "--max-sigma", 40, "--format", fmt)
    b = run("catalog", "--name", "hexagonal", "--max-sigma", 40, "--format", fmt)
    assert a == b


# -- ring -------------------------------------------------------------------------


def test_ring_xi8_index4_file():
    code, out = run("ring", "--module", DATA / "xi8_index4.json", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["rank"] == 2
    assert "x^2 - 8" in [b["min_poly"] for b in rep["basis"]]
    assert all(rep["checks"].values())


def test_ring_square_is_z():
    code, out = run("ring", "--module", DATA / "square.json")
    assert code == 0 and "ring = Z" in out


def test_ring_eta_is_z():
    code, out = run("ring", "--module", "builtin:eta", "--format", "json")
    assert code == 0
    assert json.loads(out)["rank"] == 1


def test_ring_csv():
    code, out = run("ring", "--module", "builtin:xi8", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2


# -- verify -----------------------------------------------------------------------


def test_verify_corrupted_fixture_fails_with_counterexample():
    code, out = run("verify", "--suite", "den-sig", "--extra-maps", FIXTURES / "corrupted_maps.json", "--format", "json")
    assert code == 1
    rep = json.loads(out)
    assert rep["ok"] is False
    failed = [c for s in rep["suites"] for c in s["claims"] if c["failed"]]
    assert {c["claim"] for c in failed} == {"record_is_valid_map", "record_matches_expectation"}
    assert all("counterexample" in c for c in failed)
    # the library suites themselves stay green
    assert all(s["ok"] for s in rep["suites"] if s["suite"] == "den-sig")


def test_verify_valid_fixture_passes():
    code, out = run("verify", "--suite", "rings", "--extra-maps", FIXTURES / "valid_maps.json")
    assert code == 0 and "overall: PASS" in out


def test_verify_rings_csv_deterministic():
    a = run("verify", "--suite", "rings", "--format", "csv")
    b = run("verify", "--suite", "rings", "--format", "csv")
    assert a == b and a[0] == 0


def test_verify_scal_group_json_deterministic():
    a = run("verify", "--suite", "scal-group", "--seed", 7, "--format", "json")
    b = run("verify", "--suite", "scal-group", "--seed", 7, "--format", "json")
    assert a == b and a[0] == 0


def test_verify_unknown_suite():
    code, _ = run("verify", "--suite", "nope")
    assert code == 2


def test_verify_negative_seed():
    code, _ = run("verify", "--suite", "rings", "--seed", -1)
    assert code == 2


def test_verify_all_seed_42_passes():
    code, out = run("verify", "--suite", "all", "--seed", 42)
    assert code == 0, out
    assert out.rstrip().endswith("overall: PASS (seed 42)")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "csmkit", "catalog", "--name", "square", "--max-sigma", "5", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "label,params,sigma,den,den_inv,checks_passed"
