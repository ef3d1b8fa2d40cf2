import random

import pytest
from hypothesis import given, strategies as st

from ncriem import groupconn as gc
from ncriem.groupcalc import build_calculus, z_n
from ncriem.matrixkit import braid_defect, det, is_unitary
from ncriem.scalars import GaussRat, cdouble_field, random_point, random_real

THIRD = GaussRat(1) / 3
FRAME_POINT = (5 * THIRD, -THIRD, 2 * THIRD, 2 * THIRD, -THIRD)

# sigma for (a, b, c, d, e), rows = output index, transcribed by hand
DISPLAY = [
    "a 0 0 0 b 0 0 0 b",
    "0 e 0 0 0 d c 0 0",
    "0 0 e c 0 0 0 d 0",
    "0 0 d e 0 0 0 c 0",
    "b 0 0 0 a 0 0 0 b",
    "0 c 0 0 0 e d 0 0",
    "0 d 0 0 0 c e 0 0",
    "0 0 c d 0 0 0 e 0",
    "b 0 0 0 b 0 0 0 a",
]


def rand_params(rng, bound=50):
    return gc.S3Params(*(random_point(bound, rng) for _ in range(5)))


def holds(params, name):
    return gc.check(gc.s3_connection(params), name)[0]


@given(st.integers(0, 10_000))
def test_sigma_matches_display(seed):
    p = rand_params(random.Random(seed))
    vals = dict(zip("abcde", p.as_tuple()))
    vals["0"] = GaussRat(0)
    rows = gc.s3_connection(p).sigma.to_rows()
    assert rows == [[vals[t] for t in line.split()] for line in DISPLAY]


def test_zero_christoffel_gives_psi():
    conn = gc.s3_connection((1, 0, 0, 1, 0))
    assert conn.sigma.equals(conn.calc.psi)


@given(st.integers(0, 10_000))
def test_determinant_identity(seed):
    a, b, c, d, e = rand_params(random.Random(seed), 1000).as_tuple()
    expected = (a - b) ** 2 * (a + 2 * b) * (e + c + d) ** 2 * (e * e - c * e - d * e + c * c + d * d - c * d) ** 2
    assert det(gc.s3_connection((a, b, c, d, e)).sigma) == expected


def test_torsion_examples():
    assert not holds((1, 0, 0, 1, 0), "torsion_free")
    assert not holds((1, 0, 0, 1, 0), "torsion_compatible")
    assert holds((GaussRat(3, 1), GaussRat(-2), 1, 1, 0), "torsion_free")
    assert holds(FRAME_POINT, "torsion_free")


def test_metric_examples():
    assert holds((THIRD, -2 * THIRD, -2 * THIRD, THIRD, -2 * THIRD), "metric")
    assert not holds((1, GaussRat(0, 1), 0, 1, 0), "metric")
    assert holds(FRAME_POINT, "metric")


def test_cotorsion_examples():
    assert holds((GaussRat(2, 5), GaussRat(1, 1), 3, -2, GaussRat(1, -1)), "cotorsion_free")
    assert not holds((1, GaussRat(0, 1), 0, 1, 0), "cotorsion_free")


def test_star_examples():
    assert holds((1, 0, 0, 1, 0), "star_compatible")
    assert not holds(FRAME_POINT, "star_compatible")
    assert holds((-THIRD, 2 * THIRD, 2 * THIRD, -THIRD, 2 * THIRD), "star_compatible")


def test_frame_point_full_profile():
    conn = gc.s3_connection(FRAME_POINT)
    assert gc.is_torsion_compatible(conn)
    assert gc.is_metric_preserving(conn)
    assert gc.is_cotorsion_free(conn)
    assert not gc.is_star_compatible(conn)


@given(st.integers(0, 10_000))
def test_metric_implies_cotorsion_free(seed):
    rng = random.Random(seed)
    a, c, d = (random_real(30, rng) for _ in range(3))
    b = random_point(30, rng)
    conn = gc.s3_connection((a, b, c, d, b.conjugate()))
    assert gc.is_metric_preserving(conn) and gc.is_cotorsion_free(conn)


@given(st.integers(0, 10_000))
def test_star_cross_checks_agree(seed):
    # matrix form, summed form and unitarity of the two N blocks
    rng = random.Random(seed)
    p = gc.sample_star(rng) if rng.random() < 0.5 else rand_params(rng, 3)
    F = cdouble_field(1e-9)
    conn = gc.s3_connection(gc.S3Params(*p.as_tuple()).coerce(F), F)
    G, C = conn.calc.group, conn.calc.C
    matrix = all(F.is_zero(x) for x in gc.star_defect(conn))
    summed = all(F.is_zero(x) for x in gc.star_summed_defect(conn))
    unitary = is_unitary(gc.n_matrix(conn, G.identity)) and is_unitary(gc.n_matrix(conn, G.mult[C[0]][C[1]]))
    assert matrix == summed == unitary


@given(st.integers(0, 10_000))
def test_metric_cross_check_agrees(seed):
    rng = random.Random(seed)
    a, c, d = (random_real(30, rng) for _ in range(3))
    b = random_point(30, rng)
    e = b.conjugate() if rng.random() < 0.5 else random_point(30, rng)
    conn = gc.s3_connection((a, b, c, d, e))
    idx = all(x == 0 for x in gc.metric_defect(conn))
    forms = all(x == 0 for x in gc.metric_forms_defect(conn))
    assert idx == forms


def test_sigma_cube():
    assert gc.sigma_power_check(gc.s3_connection((1, 0, 0, 1, 0)), 3) == 1
    assert gc.sigma_power_check(gc.s3_connection((-1, 0, 0, -1, 0)), 3) == -1
    assert gc.sigma_power_check(gc.s3_connection((2, 0, 0, 2, 0)), 3) == 8
    assert gc.sigma_power_check(gc.s3_connection(FRAME_POINT), 3) is None


def test_cube_points_profile():
    for p in ((1, 0, 0, 1, 0), (-1, 0, 0, -1, 0)):
        conn = gc.s3_connection(p)
        assert gc.is_metric_preserving(conn) and gc.is_star_compatible(conn)
        assert braid_defect(conn.sigma, 3).is_zero()


def test_braid_examples():
    assert braid_defect(gc.s3_connection((2, 0, 0, 0, 2)).sigma, 3).is_zero()
    assert not braid_defect(gc.s3_connection((2, 0, 0, 0, 3)).sigma, 3).is_zero()


def test_braid_torsion_free_star_counterexample():
    # braided, invertible and torsion free, yet star compatible: the conjunction is not empty
    p = (-1, 0, 0, 0, -1)
    conn = gc.s3_connection(p)
    for name in ("braid", "invertible_sigma", "torsion_free", "star_compatible"):
        assert gc.check(conn, name)[0], name
    assert not gc.is_cotorsion_free(conn)
    rep = gc.classify_s3(["braid", "torsion_free", "star_compatible"], samples=5, off_samples=20)
    assert rep["empty"] and not rep["ok"]
    witnesses = {f["name"] for f in rep["families"] if not f["ok"]}
    assert "braid-tf-i" in witnesses


def test_printed_third_torsion_free_braid_case_fails():
    rep = gc.classify_s3(["braid", "torsion_free"], samples=5, off_samples=20)
    by_name = {f["name"]: f for f in rep["families"]}
    assert by_name["braid-tf-iii+ (as printed)"]["pass"] is False
    assert by_name["braid-tf-iii+"]["pass"] is True
    assert rep["ok"]


@pytest.mark.parametrize("conds", [
    ["braid"], ["metric", "star"], ["metric", "torsion-free", "star"], ["torsion_free"], ["metric"],
    ["cotorsion"], ["braid", "metric"], ["braid", "metric", "star"], ["metric", "torsion_free"],
])
def test_classify_catalogued_sets(conds):
    rep = gc.classify_s3(conds, samples=8, off_samples=30, seed=3)
    assert rep["catalogued"] and rep["ok"], [f for f in rep["families"] if not f["ok"]]


def test_classify_is_deterministic():
    a = gc.classify_s3(["metric", "star"], samples=5, off_samples=10, seed=7)
    b = gc.classify_s3(["metric", "star"], samples=5, off_samples=10, seed=7)
    assert a == b


def test_unknown_condition():
    with pytest.raises(gc.UnknownCondition):
        gc.classify_s3(["flat"])
    with pytest.raises(gc.UnknownCondition):
        gc.normalize_conditions(["torsion", "nope"])


def test_gamma_support_check():
    # Z5 with C = {1, 4}: a = 1, b = c = 4 gives a^-1 b c = 2, outside C and the identity
    calc = build_calculus(z_n(5), [1, 4])
    vals = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    assert gc.GammaHat(calc, vals)[0, 1, 1] == 0
    vals[0][1][1] = 1
    with pytest.raises(gc.IllDefinedSigma):
        gc.GammaHat(calc, vals)
    vals = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    vals[0][0][0] = 1  # a^-1 b c = 4 + 1 + 1 = 1 is allowed
    assert gc.GammaHat(calc, vals)[0, 0, 0] == 1
