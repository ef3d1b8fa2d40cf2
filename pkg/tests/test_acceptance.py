"""Acceptance criteria 1-12, one printed PASS/FAIL line each.

Run standalone with ``python tests/test_acceptance.py`` for just the summary.
"""
from __future__ import annotations

import random

import pytest

from ncriem import groupconn as gc
from ncriem import qalg
from ncriem import qconn as qc
from ncriem.groupcalc import s3_calculus
from ncriem.matrixkit import braid_defect, det
from ncriem.scalars import QRAT, GaussRat, cdouble_field, random_point

q = QRAT.q()


def c01_determinant_identity():
    rng = random.Random(2024)
    for _ in range(100):
        a, b, c, d, e = (random_point(1000, rng) for _ in range(5))
        lhs = det(gc.s3_connection((a, b, c, d, e)).sigma)
        rhs = (a - b) ** 2 * (a + 2 * b) * (e + c + d) ** 2 * (e * e - c * e - d * e + c * c + d * d - c * d) ** 2
        if lhs != rhs:
            return False, f"mismatch at {(a, b, c, d, e)}"
    return True, "100 exact points"


def c02_braid_families():
    rep = gc.classify_s3(["braid"], samples=50, off_samples=100, seed=0)
    names = [f["name"] for f in rep["families"]]
    cases = {n.split("-")[1].rstrip("+-w*") for n in names}
    ok = rep["ok"] and cases == {str(k) for k in range(1, 8)} and rep["off_family_samples"]["count"] == 100
    return ok, f"{len(names)} families, off-family passing {rep['off_family_samples']['passing']}/100"


def c03_torsion_plane():
    rng = random.Random(3)
    for _ in range(50):
        a, b, e = (random_point(100, rng) for _ in range(3))
        conn = gc.s3_connection((a, b, e + 1, e + 1, e))
        if not (gc.check(conn, "torsion_free")[0] and gc.check(conn, "torsion_compatible")[0]):
            return False, "on-plane point failed"
    for _ in range(50):
        conn = gc.s3_connection([random_point(100, rng) for _ in range(5)])
        if gc.check(conn, "torsion_free")[0] or gc.check(conn, "torsion_compatible")[0]:
            return False, "off-plane point passed"
    return True, "50 + 50 exact samples"


def c04_angle_and_line_moduli():
    F = cdouble_field(1e-10)
    rng = random.Random(4)
    worst = 0.0
    for _ in range(25):
        conn = gc.s3_connection(gc.sample_tf_star(rng).coerce(F), F)
        for name in ("torsion_free", "star_compatible"):
            worst = max(worst, gc.check(conn, name)[1])
    samples = gc.r_line_samples(rng, 25)
    rs = [s[0] for s in samples]
    for r, st, sd in samples:
        conn = gc.s3_connection(gc.r_line_params(r, st, sd).coerce(F), F)
        for name in ("torsion_free", "cotorsion_free", "star_compatible"):
            worst = max(worst, gc.check(conn, name)[1])
    ok = worst < 1e-10 and 1 / 3 in rs and 2 / 3 in rs
    return ok, f"25 + 25 points, worst residual {worst:.1e}"


def c05_metric_star():
    rep = gc.classify_s3(["metric", "star"], samples=10, off_samples=100)
    empty = gc.classify_s3(["metric", "torsion_free", "star"], samples=10, off_samples=100)
    four = sorted(f["name"] for f in rep["families"]) == ["metric-star-i", "metric-star-ii", "metric-star-iii", "metric-star-iv"]
    third = GaussRat(1) / 3
    conn = gc.s3_connection((5 * third, -third, 2 * third, 2 * third, -third))
    point = (gc.is_torsion_compatible(conn) and gc.check(conn, "torsion_free")[0] and gc.is_cotorsion_free(conn)
             and gc.is_metric_preserving(conn) and not gc.is_star_compatible(conn))
    ok = rep["ok"] and four and empty["empty"] and empty["ok"] and point
    return ok, f"families ok={rep['ok']}, empty conjunction ok={empty['ok']}, reference point ok={point}"


def c06_sigma_cube():
    ok = True
    for p, lam in (((1, 0, 0, 1, 0), 1), ((-1, 0, 0, -1, 0), -1)):
        conn = gc.s3_connection(p)
        ok &= gc.sigma_power_check(conn, 3) == lam
        ok &= gc.is_metric_preserving(conn) and gc.is_star_compatible(conn)
        ok &= braid_defect(conn.sigma, 3).is_zero()
    return ok, "a = d = +-1"


def c07_algebra_engine():
    rep = qalg.verify_3d_calculus()
    names = {c["name"] for c in rep["checks"]}
    needed = {f"d{g}_(2).S^-1({g}_(1))" for g in "abcd"} | {f"e{s}* from the definition" for s in "+0-"}
    rng = random.Random(7)
    bad = sum(1 for _ in range(500)
              if (lambda x, y, z: (x * y) * z != x * (y * z))(*(qalg.random_monomial(rng) for _ in range(3))))
    relations = all(c["ok"] for c in rep["checks"] if c["name"].startswith("relation"))
    return rep["ok"] and needed <= names and relations and bad == 0, f"{rep['count']} identities, {bad} associativity failures"


def c08_sphere():
    rep = qc.sphere_descent_check()
    qrep = qalg.verify_3d_calculus()
    six = [c for c in qrep["checks"] if c["name"].startswith("e0 coefficient of d(")]
    ok = (len(six) == 6 and all(c["ok"] for c in six) and rep["matches_braided_point"]
          and rep["n_plus"] == "(1+q^2)/q^4" and rep["n_minus"] == "-1-q^2")
    return ok, f"(n+, n-) = ({rep['n_plus']}, {rep['n_minus']})"


def c09_braided_points():
    ok = True
    pts = qc.braided_points(None, QRAT)
    for conn in pts:
        ok &= braid_defect(qc.sigma9(conn), 3).is_zero()
        ok &= all(r["ok"] for r in qc.braided_point_table_check(conn))
        ok &= qc.torsion_q(conn)[1] == -(q ** 3)
    return ok and len(pts) == 2, "two points, 27-dim braid check, nine eigenpairs, T(e0) = -q^3"


def c10_levi_civita():
    rng = random.Random(10)
    ok = True
    for _ in range(10):
        qq = rng.uniform(0.3, 3.0)
        g = qc.QMetric(*(rng.uniform(0.2, 5.0) for _ in range(3)))
        rep = qc.levi_civita_solve(qq, g, 1e-9)
        ok &= rep["disc"] > 0 and len(rep["solutions"]) == 4 and rep["ok"]
    ok &= qc.levi_civita_solve(2, qc.QMetric(1, 1, 1))["disc"] == 148
    roots = []
    for qq in (1 - 1e-3, 1 + 1e-3):
        rep = qc.levi_civita_solve(qq, qc.QMetric(1, 1, 1))
        roots.append(rep["solutions"][rep["classical_root_index"]]["n_plus"])
    ok &= all(abs(n - 1.5) < 1e-2 for n in roots)
    return ok, f"classical n+ = {roots[0]:.4f}, {roots[1]:.4f}"


def c11_classical_limit():
    rep = qc.classical_limit_check(qc.QMetric(1, 1, 1))
    ok = rep["exists"] and all(rep[k] for k in ("torsion_free", "metric_preserving", "star_preserving"))
    ok &= rep["solution"]["nu"] == "1/2" and rep["solution"]["mu"] == "-1/2"
    none = qc.classical_limit_check(qc.QMetric(1, 1, 2))
    return ok and not none["exists"], "equal g++ = g-- solvable, unequal empty"


def c12_calculus_invariants():
    calc = s3_calculus()
    d2 = all(calc.is_zero2(calc.d1(calc.d0(calc.delta(h)))) for h in range(calc.group.order))
    return d2 and calc.dim2 == 4 and braid_defect(calc.psi, 3).is_zero(), "exact"


CRITERIA = [c01_determinant_identity, c02_braid_families, c03_torsion_plane, c04_angle_and_line_moduli,
            c05_metric_star, c06_sigma_cube, c07_algebra_engine, c08_sphere, c09_braided_points,
            c10_levi_civita, c11_classical_limit, c12_calculus_invariants]


def _line(k: int, fn) -> tuple[bool, str]:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    name = fn.__name__.split("_", 1)[1].replace("_", " ")
    return bool(ok), f"ACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1), ids=[f.__name__ for f in CRITERIA])
def test_criterion(k, capsys):
    ok, line = _line(k, CRITERIA[k - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(k, fn) for k, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
