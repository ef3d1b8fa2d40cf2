"""Bicovariant first-order calculus on the functions of a finite group.

Conventions
-----------
* Group elements are integer indices; ``mult[x][y]`` is the index of ``xy``.
* ``C`` is an ordered tuple of element indices; positions in ``C`` label the
  invariant 1-forms ``xi^c``.
* A 1-form is stored as coefficients ``w[g][k]`` meaning
  ``sum_{g,k} w[g][k] delta_g xi^{C[k]}``.  The bimodule rule is
  ``xi^c f = (R_c f) xi^c`` with ``(R_c f)(x) = f(xc)``.
* Tensor products of invariant forms are indexed by ``i*n + j`` for
  ``xi^{C[i]} (x) xi^{C[j]}``; matrices act on column vectors (``M[out, in]``).
* Lambda^2 is ``Lambda^1 (x) Lambda^1 / ker(id - Psi)``, presented by a chosen
  basis of tensor pairs together with a reduction matrix.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .matrixkit import Mat, identity, kernel_basis, rank, rref
from .scalars import GAUSS, Field

__all__ = [
    "FiniteGroup",
    "GenSet",
    "FGCalculus",
    "FGMetric",
    "Form1",
    "Form2",
    "NotAdStable",
    "NotInverseClosed",
    "GroupAxiomError",
    "s3",
    "z_n",
    "d4",
    "make_genset",
    "build_calculus",
    "s3_calculus",
    "S3_WEDGE_BASIS",
]


class NotAdStable(ValueError):
    pass


class NotInverseClosed(ValueError):
    pass


class GroupAxiomError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    mult: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    identity: int = dc_field(init=False)
    inv: tuple[int, ...] = dc_field(init=False)

    def __post_init__(self):
        n = len(self.mult)
        if any(len(row) != n for row in self.mult):
            raise GroupAxiomError("multiplication table is not square")
        if len(self.labels) != n:
            raise GroupAxiomError("one label per element is required")
        if any(not 0 <= x < n for row in self.mult for x in row):
            raise GroupAxiomError("table entries out of range")
        ident = next((e for e in range(n) if all(self.mult[e][x] == x == self.mult[x][e] for x in range(n))), None)
        if ident is None:
            raise GroupAxiomError("no identity element")
        inv = []
        for x in range(n):
            y = next((y for y in range(n) if self.mult[x][y] == ident), None)
            if y is None or self.mult[y][x] != ident:
                raise GroupAxiomError(f"element {self.labels[x]} has no inverse")
            inv.append(y)
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "inv", tuple(inv))
        self._check_associative()

    def _check_associative(self):
        n = self.order
        m = self.mult
        if n <= 24:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000))
        for x, y, z in triples:
            if m[m[x][y]][z] != m[x][m[y][z]]:
                raise GroupAxiomError(f"not associative at ({self.labels[x]}, {self.labels[y]}, {self.labels[z]})")

    @property
    def order(self) -> int:
        return len(self.mult)

    def mul(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mult[acc][x]
        return acc

    def conj(self, x: int, a: int) -> int:
        """``x a x^{-1}``."""
        return self.mult[self.mult[x][a]][self.inv[x]]

    def conjugacy_class(self, a: int) -> frozenset[int]:
        return frozenset(self.conj(x, a) for x in range(self.order))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {"order": self.order, "mult_table": [list(r) for r in self.mult], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: dict | str) -> "FiniteGroup":
        if isinstance(data, str):
            data = json.loads(data)
        table = tuple(tuple(int(x) for x in row) for row in data["mult_table"])
        if int(data["order"]) != len(table):
            raise GroupAxiomError("order does not match the table size")
        labels = tuple(data.get("labels") or [str(k) for k in range(len(table))])
        return cls(table, labels)


def _perm_group(perms: Sequence[tuple[int, ...]], labels: Sequence[str]) -> FiniteGroup:
    # (p*q)(i) = p(q(i))
    index = {p: k for k, p in enumerate(perms)}
    mult = tuple(tuple(index[tuple(p[q[i]] for i in range(len(q)))] for q in perms) for p in perms)
    return FiniteGroup(mult, tuple(labels))


def s3() -> FiniteGroup:
    """S3 as permutations of {1,2,3}; order e, (12), (13), (23), (123), (132)."""
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    return _perm_group(perms, ["e", "(12)", "(13)", "(23)", "(123)", "(132)"])


def z_n(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    mult = tuple(tuple((x + y) % n for y in range(n)) for x in range(n))
    return FiniteGroup(mult, tuple(str(k) for k in range(n)))


def d4() -> FiniteGroup:
    """Dihedral group of order 8: r^k at index k, s r^k at index 4 + k."""
    def mul(x, y):
        fx, kx = divmod(x, 4)
        fy, ky = divmod(y, 4)
        # (s^fx r^kx)(s^fy r^ky) = s^(fx+fy) r^((-1)^fy kx + ky)
        k = (ky + (-kx if fy else kx)) % 4
        return ((fx + fy) % 2) * 4 + k

    mult = tuple(tuple(mul(x, y) for y in range(8)) for x in range(8))
    labels = ["e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"]
    return FiniteGroup(mult, tuple(labels))


# ---------------------------------------------------------------------------
# Generating sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenSet:
    elements: tuple[int, ...]
    ad_stable: bool
    inverse_closed: bool


def make_genset(G: FiniteGroup, C: Sequence[int]) -> GenSet:
    C = tuple(C)
    if G.identity in C:
        raise ValueError("the generating set must not contain the identity")
    if len(set(C)) != len(C):
        raise ValueError("repeated element in generating set")
    s = set(C)
    ad = all(G.conj(x, c) in s for x in range(G.order) for c in C)
    inv = all(G.inv[c] in s for c in C)
    return GenSet(C, ad, inv)


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Form1:
    """``coeffs[g][k]`` is the coefficient of ``delta_g xi^{C[k]}``."""

    coeffs: tuple[tuple, ...]

    def __add__(self, other: "Form1") -> "Form1":
        return Form1(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form1") -> "Form1":
        return Form1(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "Form1":
        return Form1(tuple(tuple(c * a for a in r) for r in self.coeffs))


@dataclass(frozen=True)
class Form2:
    """``coeffs[g][k]`` is the coefficient of ``delta_g`` times the k-th Lambda^2 basis element."""

    coeffs: tuple[tuple, ...]

    def __add__(self, other: "Form2") -> "Form2":
        return Form2(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form2") -> "Form2":
        return Form2(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))


# ---------------------------------------------------------------------------
# Calculus
# ---------------------------------------------------------------------------

# (xi^1 ^ xi^2, xi^1 ^ xi^3, xi^2 ^ xi^3, xi^3 ^ xi^2) as positions in C
S3_WEDGE_BASIS = ((0, 1), (0, 2), (1, 2), (2, 1))


@dataclass(frozen=True)
class FGCalculus:
    group: FiniteGroup
    gens: GenSet
    field: Field
    psi: Mat
    wedge_pairs: tuple[tuple[int, int], ...]
    reduction: Mat  # dim Lambda^2 x n^2
    dxi: tuple[tuple, ...]  # Lambda^2 coordinates of d(xi^c)

    # -- bookkeeping ---------------------------------------------------------
    @property
    def C(self) -> tuple[int, ...]:
        return self.gens.elements

    @property
    def n(self) -> int:
        return len(self.gens.elements)

    @property
    def dim2(self) -> int:
        return len(self.wedge_pairs)

    def pos(self, element: int) -> int | None:
        try:
            return self.C.index(element)
        except ValueError:
            return None

    def pair_index(self, i: int, j: int) -> int:
        return i * self.n + j

    def zero1(self) -> Form1:
        z = self.field.zero
        return Form1(tuple((z,) * self.n for _ in range(self.group.order)))

    def invariant1(self, vec: Sequence) -> Form1:
        """Left-invariant 1-form with the given constant coefficients."""
        vec = tuple(self.field.coerce(v) for v in vec)
        return Form1(tuple(vec for _ in range(self.group.order)))

    def xi(self, k: int) -> Form1:
        F = self.field
        return self.invariant1([F.one if j == k else F.zero for j in range(self.n)])

    def theta(self) -> Form1:
        return self.invariant1([self.field.one] * self.n)

    def delta(self, h: int) -> list:
        F = self.field
        return [F.one if g == h else F.zero for g in range(self.group.order)]

    def wedge_tensor(self, vec: Sequence) -> list:
        """Image in Lambda^2 of an invariant tensor given by its n^2 coefficients."""
        return self.reduction.apply(list(vec))

    # -- module structure --------------------------------------------------
    def left_mul(self, f: Sequence, w: Form1) -> Form1:
        return Form1(tuple(tuple(f[g] * a for a in row) for g, row in enumerate(w.coeffs)))

    def right_mul(self, w: Form1, f: Sequence) -> Form1:
        G, C = self.group, self.C
        return Form1(tuple(tuple(a * f[G.mult[g][C[k]]] for k, a in enumerate(row)) for g, row in enumerate(w.coeffs)))

    def left_mul2(self, f: Sequence, w: Form2) -> Form2:
        return Form2(tuple(tuple(f[g] * a for a in row) for g, row in enumerate(w.coeffs)))

    # -- exterior algebra ------------------------------------------------------
    def wedge(self, w: Form1, v: Form1) -> Form2:
        """``(w ^ v)`` using ``xi^a f = (R_a f) xi^a``."""
        G, C, n = self.group, self.C, self.n
        zero = self.field.zero
        out = []
        for g in range(G.order):
            t = [zero] * (n * n)
            for a in range(n):
                wa = w.coeffs[g][a]
                if wa == 0:
                    continue
                ga = G.mult[g][C[a]]
                for b in range(n):
                    vb = v.coeffs[ga][b]
                    if vb != 0:
                        t[a * n + b] = t[a * n + b] + wa * vb
            out.append(tuple(self.wedge_tensor(t)))
        return Form2(tuple(out))

    def d0(self, f: Sequence) -> Form1:
        """``df = sum_c (R_c f - f) xi^c``."""
        G, C = self.group, self.C
        return Form1(tuple(tuple(f[G.mult[g][c]] - f[g] for c in C) for g in range(G.order)))

    def d1(self, w: Form1) -> Form2:
        """Exterior derivative of a 1-form, ``d(f xi^c) = df ^ xi^c + f d(xi^c)``."""
        G, C, n = self.group, self.C, self.n
        zero = self.field.zero
        out = []
        for g in range(G.order):
            t = [zero] * (n * n)
            for c in range(n):
                for a in range(n):
                    coeff = w.coeffs[G.mult[g][C[a]]][c] - w.coeffs[g][c]
                    if coeff != 0:
                        t[a * n + c] = t[a * n + c] + coeff
            red = self.wedge_tensor(t)
            for c in range(n):
                fc = w.coeffs[g][c]
                if fc != 0:
                    red = [x + fc * y for x, y in zip(red, self.dxi[c])]
            out.append(tuple(red))
        return Form2(tuple(out))

    def star1(self, w: Form1) -> Form1:
        """``(f xi^a)* = -(R_{a^-1} conj f) xi^{a^-1}``."""
        if not self.gens.inverse_closed:
            raise NotInverseClosed("star needs an inverse-closed generating set")
        G, C = self.group, self.C
        F = self.field
        rows = []
        for g in range(G.order):
            row = []
            for b in range(self.n):
                src = self.pos(G.inv[C[b]])
                row.append(-F.conj(w.coeffs[G.mult[g][C[b]]][src]))
            rows.append(tuple(row))
        return Form1(tuple(rows))

    def conj_fn(self, f: Sequence) -> list:
        return [self.field.conj(x) for x in f]

    # -- the map varpi and its kernel --------------------------------------
    def varpi(self, g: int) -> list:
        """Invariant coefficients of ``varpi(delta_g) = sum_c (delta_{g,c} - delta_{g,e}) xi^c``."""
        F = self.field
        e = self.group.identity
        return [(F.one if g == c else F.zero) - (F.one if g == e else F.zero) for c in self.C]

    def varpi_matrix(self) -> Mat:
        cols = [self.varpi(g) for g in range(self.group.order)]
        return Mat(self.n, self.group.order, [cols[g][k] for k in range(self.n) for g in range(self.group.order)], self.field)

    def varpi_kernel_basis(self) -> list[list]:
        return kernel_basis(self.varpi_matrix())

    def is_zero1(self, w: Form1) -> bool:
        return all(self.field.is_zero(a) for row in w.coeffs for a in row)

    def is_zero2(self, w: Form2) -> bool:
        return all(self.field.is_zero(a) for row in w.coeffs for a in row)


def _psi_matrix(G: FiniteGroup, C: Sequence[int], field: Field) -> Mat:
    n = len(C)
    pos = {c: k for k, c in enumerate(C)}
    zero, one = field.zero, field.one
    entries = [zero] * (n ** 4)
    for i, a in enumerate(C):
        for j, b in enumerate(C):
            out = pos[G.conj(a, b)] * n + i
            entries[out * n * n + i * n + j] = one
    return Mat(n * n, n * n, entries, field)


def _reduction(psi: Mat, pairs: Sequence[tuple[int, int]] | None, n: int, field: Field):
    N = n * n
    K = kernel_basis(identity(N, field) - psi)
    if pairs is None:
        chosen: list[tuple[int, int]] = []
        vecs = [list(v) for v in K]
        base_rank = len(vecs)
        for i in range(n):
            for j in range(n):
                e = [field.one if k == i * n + j else field.zero for k in range(N)]
                trial = vecs + [e]
                if rank(Mat(len(trial), N, [x for v in trial for x in v], field)) > base_rank + len(chosen):
                    vecs = trial
                    chosen.append((i, j))
        pairs = tuple(chosen)
    pairs = tuple(tuple(p) for p in pairs)
    if len(pairs) + len(K) != N:
        raise ValueError("wedge basis has the wrong size for this calculus")
    # columns: chosen elementary tensors then kernel vectors; invert to read coordinates
    cols = [[field.one if k == i * n + j else field.zero for k in range(N)] for i, j in pairs] + [list(v) for v in K]
    B = Mat(N, N, [cols[c][r] for r in range(N) for c in range(N)], field)
    aug = Mat(N, 2 * N, [x for r in range(N) for x in (*B.row(r), *identity(N, field).row(r))], field)
    R, piv = rref(aug)
    if piv[:N] != list(range(N)):
        raise ValueError("chosen wedge basis is not independent modulo ker(id - Psi)")
    red = Mat(len(pairs), N, [R[r, N + c] for r in range(len(pairs)) for c in range(N)], field)
    return pairs, red


def build_calculus(G: FiniteGroup, C: Sequence[int], field: Field = GAUSS, wedge_basis: Sequence[tuple[int, int]] | None = None) -> FGCalculus:
    gens = make_genset(G, C)
    if not gens.ad_stable:
        raise NotAdStable("generating set must be stable under conjugation")
    C = gens.elements
    n = len(C)
    psi = _psi_matrix(G, C, field)
    pairs, red = _reduction(psi, wedge_basis, n, field)
    # d xi^c = sum_a (xi^a ^ xi^c + xi^c ^ xi^a) - sum_{ab=c} xi^a ^ xi^b
    dxi = []
    for c in range(n):
        t = [field.zero] * (n * n)
        for a in range(n):
            t[a * n + c] = t[a * n + c] + field.one
            t[c * n + a] = t[c * n + a] + field.one
        for a in range(n):
            for b in range(n):
                if G.mult[C[a]][C[b]] == C[c]:
                    t[a * n + b] = t[a * n + b] - field.one
        dxi.append(tuple(red.apply(t)))
    return FGCalculus(G, gens, field, psi, pairs, red, tuple(dxi))


def s3_calculus(field: Field = GAUSS) -> FGCalculus:
    """S3 with the transpositions (12), (13), (23) labelled 1, 2, 3."""
    G = s3()
    C = [G.index("(12)"), G.index("(13)"), G.index("(23)")]
    return build_calculus(G, C, field, S3_WEDGE_BASIS)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FGMetric:
    """Constant Hermitian metric ``g[a][b]`` on the invariant 1-forms."""

    g: Mat

    @classmethod
    def euclidean(cls, n: int, field: Field = GAUSS) -> "FGMetric":
        return cls(identity(n, field))

    @classmethod
    def diagonal(cls, values: Sequence, field: Field = GAUSS) -> "FGMetric":
        n = len(values)
        return cls(Mat(n, n, [values[i] if i == j else field.zero for i in range(n) for j in range(n)], field))

    @property
    def field(self) -> Field:
        return self.g.field

    def is_hermitian(self) -> bool:
        return self.g.equals(self.g.transpose().conj())

    def is_diagonal(self) -> bool:
        F = self.field
        return all(F.is_zero(self.g[i, j]) for i in range(self.g.rows) for j in range(self.g.cols) if i != j)

    @property
    def diagonal_equal(self) -> bool:
        F = self.field
        return self.is_diagonal() and all(F.eq(self.g[i, i], self.g[0, 0]) for i in range(self.g.rows))

    def is_right_module_map(self) -> bool:
        """Right-module invariance forces a diagonal metric."""
        return self.is_diagonal()

    def is_right_comodule_map(self, calc: FGCalculus) -> bool:
        """Diagonal entries must be constant on conjugacy classes of C."""
        if not self.is_diagonal():
            return False
        G, C = calc.group, calc.C
        F = self.field
        for a in range(calc.n):
            for x in range(G.order):
                b = calc.pos(G.conj(x, C[a]))
                if not F.eq(self.g[a, a], self.g[b, b]):
                    return False
        return True
