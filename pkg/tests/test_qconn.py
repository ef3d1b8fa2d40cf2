import random

import pytest
from hypothesis import given, strategies as st

from ncriem import qconn as qc
from ncriem.matrixkit import braid_defect
from ncriem.scalars import QRAT, GaussRat, cdouble_field, eval_q, random_point, random_real

q = QRAT.q()
P, Z, M = 0, 1, 2


def idx(i, j):
    return 3 * i + j


def rand_conn(seed):
    rng = random.Random(seed)
    return qc.QSU2Connection.make(**{k: random_point(20, rng) for k in qc.PARAMS})


def test_sigma_entries_from_formula():
    conn = rand_conn(1)
    S = qc.sigma9(conn)
    assert S[idx(P, P), idx(P, P)] == q ** 2
    # sigma(e+ (x) e0) = (1 + (1-q^2) n+) e0 (x) e+ + (1-q^2) m+ e+ (x) e0
    assert S[idx(Z, P), idx(P, Z)] == 1 + (1 - q ** 2) * conn.n_plus
    assert S[idx(P, Z), idx(P, Z)] == (1 - q ** 2) * conn.m_plus
    assert S[idx(Z, M), idx(M, Z)] == 1 + (1 - q ** 2) * conn.n_minus
    assert S[idx(M, Z), idx(M, Z)] == (1 - q ** 2) * conn.m_minus
    flat = qc.QSU2Connection.make()
    assert qc.sigma9(flat)[idx(Z, Z), idx(Z, Z)] == 1


@given(st.integers(0, 10_000))
def test_sigma_general_construction_matches_display(seed):
    conn = rand_conn(seed)
    assert qc.sigma9(conn).equals(qc.sigma9_display(conn))


@given(st.integers(0, 10_000))
def test_torsion_three_routes_agree(seed):
    conn = rand_conn(seed)
    tq = qc.torsion_q(conn)
    tw = qc.torsion_from_wedge(conn)
    assert (tw[P][1], tw[Z][0], tw[M][2]) == tq


def test_torsion_from_algebra_engine():
    conn = rand_conn(5)
    ta = qc.torsion_from_qalg(conn)
    tw = qc.torsion_from_wedge(conn)
    for i in range(3):
        for k in range(3):
            assert ta[i].comps[k].scalar_part() == tw[i][k]
            assert ta[i].comps[k].is_scalar()


@given(st.integers(0, 10_000))
def test_torsion_compat_matrix_vs_closed_form(seed):
    conn = rand_conn(seed)
    ok_matrix = all(QRAT.is_zero(x) for x in qc.torsion_compat_defect(conn))
    ok_formula = all(QRAT.is_zero(x) for x in qc.torsion_compat_formula_defect(conn))
    assert ok_matrix == ok_formula
    fixed = conn.with_params(m_plus=q ** 4 * conn.n_plus - (1 + q ** 2), m_minus=q ** -4 * (conn.n_minus + 1 + q ** 2))
    assert all(QRAT.is_zero(x) for x in qc.torsion_compat_defect(fixed))


@given(st.integers(0, 10_000), st.floats(0.3, 3.0).filter(lambda x: abs(x - 1) > 1e-2))
def test_star_compat_matrix_vs_closed_form(seed, qq):
    F = cdouble_field(1e-8)
    rng = random.Random(seed)
    np_ = rng.uniform(-2, 2)
    yp = 1 + np_ * (1 - qq * qq)
    mp = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    good = qc.QSU2Connection.make(q=qq, field=F, n_plus=np_, n_minus=(-np_ / yp), m_plus=mp,
                                  m_minus=(-(qq ** -4) * mp / yp).conjugate(), r=rng.choice([0.0, 2 / (qq * qq - 1)]),
                                  nu=complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), mu=rng.uniform(-1, 1))
    assert all(F.is_zero(x) for x in qc.star_compat_defect(good))
    assert all(F.is_zero(x) for x in qc.star_compat_formula_defect(good))
    bad = good.with_params(r=0.5)
    assert not all(F.is_zero(x) for x in qc.star_compat_defect(bad))


def test_r_choices():
    assert qc.r_choices(QRAT, q) == (0, 2 / (q ** 2 - 1))
    with pytest.raises(qc.BadQ):
        qc.r_choices(QRAT, QRAT.coerce(1))


@pytest.mark.parametrize("r_choice", [0, 1])
def test_family_members(r_choice):
    g = qc.QMetric(1, 2, 3)
    rng = random.Random(r_choice)
    for _ in range(4):
        conn = qc.family_6_2_2(None, g, r_choice, random_real(30, rng))
        fl = qc.flags(conn, g)
        assert fl["torsion_compatible"] and fl["metric_preserving"] and fl["star_compatible"]
        assert qc.torsion_q(conn)[1] == q * (3 * conn.m_minus - conn.m_plus - 2 * q ** 2) / 2
        assert all(QRAT.is_zero(QRAT.conj(v) - v) for v in conn.params().values())


def test_family_degenerate_n_plus():
    with pytest.raises(qc.DegenerateN):
        qc.family_6_2_2(None, qc.QMetric(1, 1, 1), 0, 0)


def test_braided_points():
    pts = qc.braided_points(None, QRAT)
    assert len(pts) == 2
    for conn in pts:
        assert conn.n_plus == (1 + q ** 2) / q ** 4 and conn.n_minus == -(1 + q ** 2)
        assert conn.m_plus == 0 and conn.m_minus == 0 and conn.nu == 0 and conn.mu == 0
        assert braid_defect(qc.sigma9(conn), 3).is_zero()
        assert qc.torsion_q(conn) == (0, -(q ** 3), 0)
        fl = qc.flags(conn, qc.QMetric(1, 1, 1))
        assert fl["braided"] and fl["metric_preserving"] and fl["star_compatible"] and not fl["torsion_free"]
        rows = qc.braided_point_table_check(conn)
        assert len(rows) == 9 and all(r["ok"] for r in rows)


def test_braided_point_e0_eigenvalues():
    lams = set()
    for conn in qc.braided_points(None, QRAT):
        S = qc.sigma9(conn)
        lams.add(str(S[idx(Z, Z), idx(Z, Z)]))
    assert lams == {"1", "-1"}


def test_braid_rule_printed_vs_corrected():
    r = GaussRat(1, 2) / 7
    rho = 1 + r * (1 - q ** 2)
    np_ = (-1 - rho / q ** 2) / (1 - q ** 2)
    printed = qc.QSU2Connection.make(n_plus=np_, n_minus=-(1 + q ** 2), m_plus=q ** 2 * np_, r=r)
    corrected = printed.with_params(m_plus=-(q ** 2) * np_)
    assert not braid_defect(qc.sigma9(printed), 3).is_zero()
    assert braid_defect(qc.sigma9(corrected), 3).is_zero()
    assert qc.braided_rule(corrected) and not qc.braided_rule(corrected, corrected=False)


def test_generic_m_zero_is_braided():
    conn = rand_conn(11).with_params(m_plus=0, m_minus=0)
    assert braid_defect(qc.sigma9(conn), 3).is_zero()
    et = qc.eigen_table_check(conn)
    assert et["attached_reading_ok"] and not et["overall_reading_ok"]


def test_star_preserving_points():
    g = qc.QMetric(1, 2, 1)
    sp = qc.special_points(None, g)
    assert sp["coincide_at_r0"]
    for conn in qc.star_preserving_points(None, g):
        assert qc.flags(conn, g)["star_preserving"]
        assert conn.m_plus == 0 and conn.n_plus == (1 + q ** 2) / q ** 4
    assert not qc.classical_probe(qc.QMetric(1, 2, 3))["bounded"]
    assert qc.classical_probe(qc.QMetric(2, 2, 2))["bounded"]


def test_levi_civita_examples():
    rep = qc.levi_civita_solve(2, qc.QMetric(1, 1, 1))
    assert rep["disc"] == 148
    assert len(rep["solutions"]) == 4 and rep["ok"]
    for qq in (1 - 1e-3, 1 + 1e-3):
        rep = qc.levi_civita_solve(qq, qc.QMetric(1, 1, 1))
        assert abs(rep["solutions"][rep["classical_root_index"]]["n_plus"] - 1.5) < 1e-2
    rep = qc.levi_civita_solve(0.9, qc.QMetric(1, 2, 3), 1e-9)
    assert len(rep["solutions"]) == 4 and all(s["ok"] for s in rep["solutions"])


def test_levi_civita_bad_inputs():
    with pytest.raises(qc.BadQ):
        qc.levi_civita_solve(1, qc.QMetric(1, 1, 1))
    with pytest.raises(qc.BadMetric):
        qc.QMetric(1, -1, 1)
    with pytest.raises(qc.BadMetric):
        qc.QMetric(1, 1j, 1)


@given(st.floats(0.2, 5.0).filter(lambda x: abs(x - 1) > 1e-3),
       st.tuples(*[st.floats(0.1, 10.0)] * 3))
def test_levi_civita_random(qq, g):
    rep = qc.levi_civita_solve(qq, qc.QMetric(*g), 1e-8)
    assert rep["disc"] > 0
    assert len(rep["solutions"]) == 4
    assert all(s["ok"] for s in rep["solutions"])


def test_classical_limit():
    rep = qc.classical_limit_check(qc.QMetric(1, 1, 1))
    assert rep["exists"] and rep["unique"]
    assert rep["solution"]["n_plus"] == "3/2" and rep["solution"]["nu"] == "1/2" and rep["solution"]["mu"] == "-1/2"
    for key in ("torsion_free", "metric_preserving", "star_preserving", "gamma_star_condition"):
        assert rep[key], key
    assert not qc.classical_limit_check(qc.QMetric(1, 1, 2))["exists"]


def test_sphere_descent():
    rep = qc.sphere_descent_check()
    assert rep["matches_braided_point"]
    assert all(r["proportional"] for r in rep["rows"])
    assert rep["n_plus"] == "(1+q^2)/q^4" and rep["n_minus"] == "-1-q^2"


def test_numeric_q_backend_agrees_with_symbolic():
    conn = rand_conn(3)
    F = cdouble_field(1e-9)
    num = qc.QSU2Connection.make(q=1.7, field=F, **{k: complex(v) for k, v in conn.params().items()})
    S, Sn = qc.sigma9(conn), qc.sigma9(num)
    for i in range(9):
        for j in range(9):
            assert abs(complex(eval_q(S[i, j], 1.7)) - Sn[i, j]) < 1e-9
