import csv
import io
import json
import math
from pathlib import Path

import pytest

from ncriem import __version__
from ncriem.cli import CSV_COLUMNS, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def same(a, b, path="$"):
    """Structural equality; floats to 1e-12 relative, residual values only bounded."""
    if isinstance(a, dict):
        assert isinstance(b, dict) and a.keys() == b.keys(), path
        for k in a:
            if k == "residuals":
                assert all(v < 1e-12 for v in b[k].values()), path
            else:
                same(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        assert isinstance(b, list) and len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            same(x, y, f"{path}[{i}]")
    elif isinstance(a, float) and isinstance(b, float):
        assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15), path
    else:
        assert a == b, path


@pytest.fixture(autouse=True)
def no_env_seed(monkeypatch):
    monkeypatch.delenv("NCRIEM_SEED", raising=False)


def test_golden_sphere(capsys):
    code, out, _ = run(capsys, "verify", "sphere")
    assert code == 0
    assert out == (GOLDEN / "verify_sphere.json").read_text()


def test_golden_solve_lc(capsys):
    code, out, _ = run(capsys, "solve-lc", "--q", "2", "--metric", "1,1,1")
    assert code == 0
    rep = json.loads(out)
    same(json.loads((GOLDEN / "solve_lc_q2_111.json").read_text()), rep)
    assert rep["extra"]["disc"] == 148.0
    assert len(rep["sections"][0]["records"]) == 4


def test_golden_sigma_dump_csv(capsys):
    code, out, _ = run(capsys, "sigma-dump", "s3", "--params", "2,3,5,7,11", "--format", "csv")
    assert code == 0
    assert out == (GOLDEN / "sigma_dump_s3.csv").read_text()
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS


def test_report_header_and_determinism(capsys):
    _, first, _ = run(capsys, "sample-moduli", "r-line", "--seed", "9", "--count", "6")
    _, second, _ = run(capsys, "sample-moduli", "r-line", "--seed", "9", "--count", "6")
    assert first == second
    rep = json.loads(first)
    assert (rep["version"], rep["seed"], rep["backend"], rep["tolerance"]) == (__version__, 9, "gauss", 1e-10)
    assert all("ref" in r for s in rep["sections"] for r in s["records"])


def test_env_seed_overrides_flag(capsys, monkeypatch):
    monkeypatch.setenv("NCRIEM_SEED", "5")
    _, out, _ = run(capsys, "sample-moduli", "tf-star", "--seed", "1", "--count", "3")
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("NCRIEM_SEED", "five")
    code, _, err = run(capsys, "sample-moduli", "tf-star")
    assert code == 2 and "NCRIEM_SEED" in err


@pytest.mark.parametrize("argv, exc", [
    (["verify", "nonsense"], "UnknownSuite"),
    (["classify", "s3", "--conditions", "flat"], "UnknownCondition"),
    (["classify", "qsu2", "--conditions", "metric,flat"], "UnknownCondition"),
    (["solve-lc", "--q", "1"], "BadQ"),
    (["solve-lc", "--q", "-1"], "BadQ"),
    (["solve-lc", "--q", "2", "--metric", "1,-1,1"], "BadMetric"),
    (["solve-lc", "--q", "2", "--metric", "1,1"], "BadMetric"),
])
def test_usage_errors_exit_2(capsys, argv, exc):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and exc in err


def test_classify_s3_braid(capsys):
    code, out, _ = run(capsys, "classify", "s3", "--conditions", "braid", "--samples", "5")
    assert code == 0
    ids = [r["id"] for r in json.loads(out)["sections"][0]["records"]]
    assert {"braid-1", "braid-2", "braid-3", "braid-4+", "braid-5w", "braid-6w", "braid-7w", "off-family"} <= set(ids)


def test_classify_s3_metric_star_text(capsys):
    code, out, _ = run(capsys, "classify", "s3", "--conditions", "metric,star", "--format", "text", "--samples", "4")
    assert code == 0
    assert out.count("PASS") == 5 and "metric-star-iv" in out


def test_classify_nonempty_conjunction_exits_1(capsys):
    code, out, _ = run(capsys, "classify", "s3", "--conditions", "braid,torsion-free,star", "--samples", "3")
    assert code == 1
    failing = [r["id"] for r in json.loads(out)["sections"][0]["records"] if r["status"] == "fail"]
    assert "braid-tf-i" in failing


def test_classify_qsu2_two_points(capsys):
    code, out, _ = run(capsys, "classify", "qsu2", "--conditions", "metric,star,torsion-compat,braid")
    assert code == 0
    recs = json.loads(out)["sections"][0]["records"]
    assert recs[0]["id"] == "braided-points" and recs[0]["witness"]["samples"] == 2


def test_solve_lc_classical_root(capsys):
    _, out, _ = run(capsys, "solve-lc", "--q", "1.001", "--metric", "1,1,1")
    rep = json.loads(out)
    k = rep["extra"]["classical_root_index"]
    assert abs(rep["sections"][0]["records"][k]["witness"]["n_plus"] - 1.5) < 1e-2


def test_sigma_dump_qsu2_text(capsys):
    code, out, _ = run(capsys, "sigma-dump", "qsu2", "--point", "braided", "--format", "text")
    assert code == 0
    matrix = [line.split() for line in out.splitlines() if line.startswith("    ")]
    assert len(matrix) == 9 and matrix[0][0] == "q^2" and matrix[4][4] == "1"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = run(capsys, "verify", "sphere", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(target.open()))
    assert len(rows) == 7 and all(r["status"] == "pass" for r in rows)


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "ncriem", "verify", "sphere", "--format", "text"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "OK  7/7" in res.stdout
