import random

import pytest
from hypothesis import given, strategies as st

from ncriem import groupconn as gc
from ncriem.groupcalc import s3_calculus
from ncriem.matrixkit import (
    DimensionMismatch, Mat, NotSquare, adjoint, braid_defect, det, identity, kernel_basis, kron, rank, zeros,
)
from ncriem.scalars import GAUSS, GaussRat, I, random_point


def rand_mat(rng, n):
    return Mat(n, n, [random_point(9, rng) for _ in range(n * n)])


def inv2(A):
    (a, b), (c, d) = A.to_rows()
    k = (a * d - b * c).inverse()
    return Mat.from_rows([[d * k, -b * k], [-c * k, a * k]])


def test_kron_identity():
    assert kron(identity(3), identity(3)).equals(identity(9))


def test_kron_mixed_product():
    rng = random.Random(1)
    for _ in range(5):
        A, B = rand_mat(rng, 2), rand_mat(rng, 2)
        if det(A) == 0 or det(B) == 0:
            continue
        Ai, Bi = inv2(A), inv2(B)
        assert (kron(A, B) @ kron(Ai, Bi)).equals(identity(4))


def test_psi_is_permutation_with_five_fixed_vectors():
    psi = s3_calculus().psi
    assert gc.s3_connection((1, 0, 0, 1, 0)).sigma.equals(psi)
    assert len(kernel_basis(identity(9) - psi)) == 5
    assert (psi ** 3).equals(identity(9))


def test_det_examples():
    assert det(identity(9)) == 1
    assert det(gc.s3_connection((1, 0, 0, 1, 0)).sigma) == 1
    assert det(gc.s3_connection((1, 1, GaussRat(2, 1), 7, GaussRat(-3))).sigma) == 0


def test_kernel_edge_cases():
    assert kernel_basis(identity(4)) == []
    assert len(kernel_basis(zeros(2, 5))) == 5
    assert rank(zeros(3, 3)) == 0


def test_adjoint():
    assert adjoint(identity(3)).equals(identity(3))
    assert adjoint(identity(3).scale(I)).equals(identity(3).scale(-I))
    # N for the product of generators 1 and 2 versus its inverse, real c, d, e
    conn = gc.s3_connection((GaussRat(2, 1), GaussRat(0, 3), 2, 5, -1))
    G, C = conn.calc.group, conn.calc.C
    g12 = G.mult[C[0]][C[1]]
    assert adjoint(gc.n_matrix(conn, g12)).equals(gc.n_matrix(conn, G.inv[g12]))
    cplx = gc.s3_connection((1, 0, GaussRat(2, 1), 5, -1))
    assert not adjoint(gc.n_matrix(cplx, g12)).equals(gc.n_matrix(cplx, G.inv[g12]))


def test_braid_defect_examples():
    assert braid_defect(s3_calculus().psi, 3).is_zero()
    assert braid_defect(gc.s3_connection((2, 0, 0, 0, 2)).sigma, 3).is_zero()
    assert not braid_defect(gc.s3_connection((2, 0, 0, 0, 3)).sigma, 3).is_zero()


def test_shape_errors():
    with pytest.raises(NotSquare):
        det(zeros(2, 3))
    with pytest.raises(DimensionMismatch):
        zeros(2, 3) @ zeros(2, 3)


@given(st.integers(0, 10_000))
def test_det_multiplicative(seed):
    rng = random.Random(seed)
    A, B = rand_mat(rng, 3), rand_mat(rng, 3)
    assert det(A @ B) == det(A) * det(B)


@given(st.integers(0, 10_000))
def test_rank_nullity(seed):
    rng = random.Random(seed)
    rows = [[random_point(3, rng) if rng.random() < 0.5 else GaussRat(0) for _ in range(5)] for _ in range(4)]
    A = Mat.from_rows(rows, GAUSS)
    basis = kernel_basis(A)
    assert rank(A) + len(basis) == 5
    for v in basis:
        assert all(x == 0 for x in A.apply(v))
