import json
import random

import pytest
from hypothesis import given, strategies as st

from ncriem.groupcalc import (
    FGMetric, FiniteGroup, GroupAxiomError, NotAdStable, build_calculus, d4, s3, s3_calculus, z_n,
)
from ncriem.matrixkit import braid_defect, identity
from ncriem.scalars import GaussRat, random_point

CALC = s3_calculus()
G = CALC.group


def rand_fn(rng):
    return [random_point(20, rng) for _ in range(G.order)]


def add_forms(forms):
    out = forms[0]
    for w in forms[1:]:
        out = out + w
    return out


def test_s3_dimensions():
    assert CALC.n == 3
    assert CALC.dim2 == 4
    assert len(CALC.varpi_kernel_basis()) == G.order - CALC.n


def test_z2_calculus():
    Z2 = z_n(2)
    calc = build_calculus(Z2, [1])
    assert calc.psi.equals(identity(1))
    assert calc.dim2 == 0


def test_d4_reflections_need_full_class():
    D = d4()
    with pytest.raises(NotAdStable):
        build_calculus(D, [4])
    calc = build_calculus(D, [4, 6])
    assert braid_defect(calc.psi, calc.n).is_zero()


def test_d_of_constant_is_zero():
    assert CALC.is_zero1(CALC.d0([GaussRat(1)] * G.order))


def test_maurer_cartan_round_trip():
    # xi^c = sum_u delta_{u c^-1} d(delta_u)
    for k, c in enumerate(CALC.C):
        parts = [CALC.left_mul(CALC.delta(G.mult[u][G.inv[c]]), CALC.d0(CALC.delta(u))) for u in range(G.order)]
        assert CALC.is_zero1(add_forms(parts) - CALC.xi(k))


def test_d_squared_on_delta_functions():
    for h in range(G.order):
        assert CALC.is_zero2(CALC.d1(CALC.d0(CALC.delta(h))))


def test_inner_theta():
    # d theta = theta ^ theta + theta ^ theta for an inner calculus
    th = CALC.theta()
    tt = CALC.wedge(th, th)
    assert CALC.is_zero2(CALC.d1(th) - tt - tt)


def test_star_on_generators():
    for k in range(CALC.n):
        assert CALC.is_zero1(CALC.star1(CALC.xi(k)) + CALC.xi(k))


def test_star_of_real_exact_form():
    for x in range(G.order):
        w = CALC.d0(CALC.delta(x))
        assert CALC.is_zero1(CALC.star1(w) - w)


def test_group_json_round_trip():
    S = s3()
    assert FiniteGroup.from_json(json.dumps(S.to_json())).mult == S.mult
    bad = S.to_json()
    bad["mult_table"][0][0] = 1
    with pytest.raises(GroupAxiomError):
        FiniteGroup.from_json(bad)


def test_metric_invariance():
    assert FGMetric.euclidean(3).is_right_comodule_map(CALC)
    assert FGMetric.diagonal([2, 2, 2]).diagonal_equal
    assert not FGMetric.diagonal([1, 2, 2]).is_right_comodule_map(CALC)


@given(st.integers(0, 10_000))
def test_d_squared_random(seed):
    assert CALC.is_zero2(CALC.d1(CALC.d0(rand_fn(random.Random(seed)))))


@given(st.integers(0, 10_000))
def test_leibniz_random(seed):
    rng = random.Random(seed)
    f, h = rand_fn(rng), rand_fn(rng)
    lhs = CALC.d0([x * y for x, y in zip(f, h)])
    assert CALC.is_zero1(lhs - CALC.left_mul(f, CALC.d0(h)) - CALC.right_mul(CALC.d0(f), h))


@given(st.integers(0, 10_000))
def test_star_involution_and_antilinearity(seed):
    rng = random.Random(seed)
    w = CALC.left_mul(rand_fn(rng), CALC.xi(rng.randrange(3))) + CALC.right_mul(CALC.xi(rng.randrange(3)), rand_fn(rng))
    assert CALC.is_zero1(CALC.star1(CALC.star1(w)) - w)
    z = random_point(10, rng)
    assert CALC.is_zero1(CALC.star1(w.scale(z)) - CALC.star1(w).scale(z.conjugate()))


@given(st.integers(0, 10_000))
def test_star_reverses_function_products(seed):
    # (f w)* = w* conj(f)
    rng = random.Random(seed)
    f = rand_fn(rng)
    w = CALC.left_mul(rand_fn(rng), CALC.xi(rng.randrange(3)))
    assert CALC.is_zero1(CALC.star1(CALC.left_mul(f, w)) - CALC.right_mul(CALC.star1(w), CALC.conj_fn(f)))
