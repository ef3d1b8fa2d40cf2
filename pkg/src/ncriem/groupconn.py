"""Left-invariant bimodule connections on a finite-group calculus.

A connection is given by constants ``Gamma[a][b][c]`` (positions in C) with
``nabla(xi^a) = -sum Gamma[a][b][c] xi^b (x) xi^c``.  Its generalised braiding
is

    sigma(xi^d (x) xi^k) = sum_{bc = dk} (Gamma[d][b][c] + [d == c]) xi^b (x) xi^c

so ``Gamma = 0`` gives back ``Psi``.  Every property below is reported as a
list of *defects*: scalars that all vanish exactly when the property holds.
The same code runs on the exact and the numeric backends.
"""
from __future__ import annotations

import cmath
import functools
import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .groupcalc import FGCalculus, FGMetric, NotInverseClosed, s3_calculus
from .matrixkit import Mat, braid_defect, det, identity
from .scalars import GAUSS, Field, GaussRat, cdouble_field, random_point, random_real

__all__ = [
    "GammaHat",
    "S3Params",
    "FGConnection",
    "IllDefinedSigma",
    "UnknownCondition",
    "CONDITIONS",
    "s3_connection",
    "sigma",
    "torsion",
    "is_torsion_compatible",
    "is_metric_preserving",
    "is_cotorsion_free",
    "is_star_compatible",
    "sigma_power_check",
    "defects",
    "check",
    "n_matrix",
    "star_summed_defect",
    "star_defect",
    "metric_defect",
    "metric_forms_defect",
    "cotorsion_defect",
    "torsion_compat_defect",
    "braid_defects",
    "normalize_conditions",
    "r_line_params",
    "classify_s3",
    "FAMILIES",
    "Family",
]


class IllDefinedSigma(ValueError):
    pass


class UnknownCondition(ValueError):
    pass


# ---------------------------------------------------------------------------
# Christoffel data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaHat:
    calc: FGCalculus
    tensor: tuple  # tensor[a][b][c]

    def __post_init__(self):
        calc = self.calc
        G, C, n = calc.group, calc.C, calc.n
        allowed = set(C) | {G.identity}
        for a, b, c in itertools.product(range(n), repeat=3):
            if G.mul(G.inv[C[a]], C[b], C[c]) not in allowed and not calc.field.is_zero(self.tensor[a][b][c]):
                raise IllDefinedSigma(
                    f"Gamma[{a}][{b}][{c}] must vanish: a^-1 b c lies outside C and the identity"
                )

    @classmethod
    def zero(cls, calc: FGCalculus) -> "GammaHat":
        z = calc.field.zero
        n = calc.n
        return cls(calc, tuple(tuple(tuple(z for _ in range(n)) for _ in range(n)) for _ in range(n)))

    def __getitem__(self, abc):
        a, b, c = abc
        return self.tensor[a][b][c]

    def is_right_invariant(self) -> bool:
        """``Gamma`` is unchanged when all three indices are conjugated by any group element."""
        calc = self.calc
        G, C, F = calc.group, calc.C, calc.field
        for x in range(G.order):
            p = [calc.pos(G.conj(x, c)) for c in C]
            for a, b, c in itertools.product(range(calc.n), repeat=3):
                if not F.eq(self.tensor[p[a]][p[b]][p[c]], self.tensor[a][b][c]):
                    return False
        return True


@dataclass(frozen=True)
class S3Params:
    """Five complex numbers fixing a right-invariant connection on S3.

    With ``x, y, z`` running over the transpositions:
    ``Gamma^x_xx = a - 1``, ``Gamma^x_yy = b``, ``Gamma^x_yz = c`` (all distinct),
    ``Gamma^x_yx = d - 1``, ``Gamma^x_xy = e``.
    """

    a: object
    b: object
    c: object
    d: object
    e: object

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e)

    def coerce(self, field: Field) -> "S3Params":
        return S3Params(*(field.coerce(x) for x in self.as_tuple()))

    def gamma(self, calc: FGCalculus) -> GammaHat:
        F = calc.field
        a, b, c, d, e = (F.coerce(x) for x in self.as_tuple())
        one = F.one
        t = []
        for x in range(3):
            rows = []
            for y in range(3):
                row = []
                for z in range(3):
                    if x == y == z:
                        v = a - one
                    elif y == z:
                        v = b
                    elif z == x:
                        v = d - one
                    elif y == x:
                        v = e
                    else:
                        v = c
                    row.append(v)
                rows.append(tuple(row))
            t.append(tuple(rows))
        return GammaHat(calc, tuple(t))

    def format(self, field: Field) -> list[str]:
        return [field.format(field.coerce(x)) for x in self.as_tuple()]


@dataclass(frozen=True)
class FGConnection:
    calc: FGCalculus
    gamma: GammaHat

    @property
    def field(self) -> Field:
        return self.calc.field

    @cached_property
    def sigma(self) -> Mat:
        calc = self.calc
        G, C, n, F = calc.group, calc.C, calc.n, calc.field
        entries = [F.zero] * (n ** 4)
        for dd, k, b, c in itertools.product(range(n), repeat=4):
            if G.mult[C[b]][C[c]] == G.mult[C[dd]][C[k]]:
                v = self.gamma[dd, b, c] + (F.one if dd == c else F.zero)
                entries[(b * n + c) * n * n + dd * n + k] = v
        return Mat(n * n, n * n, entries, F)


@functools.lru_cache(maxsize=None)
def _s3_calc(field: Field) -> FGCalculus:
    return s3_calculus(field)


def s3_connection(params: S3Params | Sequence, field: Field = GAUSS) -> FGConnection:
    if not isinstance(params, S3Params):
        params = S3Params(*params)
    calc = _s3_calc(field)
    return FGConnection(calc, params.gamma(calc))


def sigma(conn: FGConnection) -> Mat:
    return conn.sigma


# ---------------------------------------------------------------------------
# Defects
# ---------------------------------------------------------------------------


def torsion(conn: FGConnection) -> list[list]:
    """``T(xi^a) = wedge(nabla xi^a) - d xi^a`` in Lambda^2 coordinates, one list per a."""
    calc = conn.calc
    n = calc.n
    out = []
    for a in range(n):
        t = [-conn.gamma[a, b, c] for b in range(n) for c in range(n)]
        w = calc.wedge_tensor(t)
        out.append([x - y for x, y in zip(w, calc.dxi[a])])
    return out


def torsion_compat_defect(conn: FGConnection) -> list:
    """Every column of ``id + sigma`` must wedge to zero."""
    calc = conn.calc
    M = calc.reduction @ (identity(calc.n ** 2, calc.field) + conn.sigma)
    return list(M.entries)


def _metric(conn: FGConnection, g: FGMetric | None) -> Mat:
    return (g or FGMetric.euclidean(conn.calc.n, conn.field)).g


def metric_defect(conn: FGConnection, g: FGMetric | None = None) -> list:
    """``sum_b g[a][b] Gamma^b_{d,c} - conj(sum_b g[c][b] Gamma^b_{d^-1,a})`` for all a, c, d."""
    calc = conn.calc
    G, C, n, F = calc.group, calc.C, calc.n, calc.field
    gm = _metric(conn, g)
    out = []
    for a, c, d in itertools.product(range(n), repeat=3):
        lhs = F.zero
        for b in range(n):
            lhs = lhs + gm[a, b] * conn.gamma[b, d, c]
        dinv = calc.pos(G.inv[C[d]])
        rhs = F.zero
        if dinv is not None:
            for b in range(n):
                rhs = rhs + gm[c, b] * conn.gamma[b, dinv, a]
        out.append(lhs - F.conj(rhs))
    return out


def christoffel_forms(conn: FGConnection) -> list[list[list]]:
    """``Gamma^i_j`` as invariant 1-forms: coefficient of ``xi^k`` is ``Gamma[i][k][j]``."""
    n = conn.calc.n
    return [[[conn.gamma[i, k, j] for k in range(n)] for j in range(n)] for i in range(n)]


def _star_invariant(calc: FGCalculus, vec: Sequence) -> list:
    """Star of an invariant 1-form ``sum_k v_k xi^k`` (constants commute past xi)."""
    w = calc.star1(calc.invariant1(vec))
    return list(w.coeffs[0])


def metric_forms_defect(conn: FGConnection, g: FGMetric | None = None) -> list:
    """Anti-Hermitian test for the matrix of 1-forms ``g . Gamma`` (independent of ``metric_defect``)."""
    calc = conn.calc
    n, F = calc.n, calc.field
    gm = _metric(conn, g)
    Gf = christoffel_forms(conn)
    gG = [[[sum((gm[i, l] * Gf[l][j][k] for l in range(n)), F.zero) for k in range(n)] for j in range(n)] for i in range(n)]
    out = []
    for i, j in itertools.product(range(n), repeat=2):
        st = _star_invariant(calc, gG[j][i])
        out.extend(x + y for x, y in zip(st, gG[i][j]))
    return out


def cotorsion_defect(conn: FGConnection, g: FGMetric | None = None) -> list:
    """Rows of ``(g Gamma + Gamma^dagger g) ^ xi`` in Lambda^2, for constant g."""
    calc = conn.calc
    n, F = calc.n, calc.field
    gm = _metric(conn, g)
    Gf = christoffel_forms(conn)
    out = []
    for i in range(n):
        t = [F.zero] * (n * n)
        for j in range(n):
            # (g Gamma)_{ij}
            for k in range(n):
                v = F.zero
                for l in range(n):
                    v = v + gm[i, l] * Gf[l][j][k]
                t[k * n + j] = t[k * n + j] + v
            # (Gamma^dagger g)_{ij} = sum_l (Gamma_{li})^* g_{lj}
            for l in range(n):
                st = _star_invariant(calc, Gf[l][i])
                for k in range(n):
                    t[k * n + j] = t[k * n + j] + st[k] * gm[l, j]
        out.extend(calc.wedge_tensor(t))
    return out


def star_matrix(calc: FGCalculus) -> Mat:
    """``xi^a (x) xi^b -> (xi^b)^* (x) (xi^a)^* = xi^{b^-1} (x) xi^{a^-1}`` (the two signs cancel)."""
    if not calc.gens.inverse_closed:
        raise NotInverseClosed("star needs an inverse-closed generating set")
    G, C, n, F = calc.group, calc.C, calc.n, calc.field
    entries = [F.zero] * (n ** 4)
    for a, b in itertools.product(range(n), repeat=2):
        ai, bi = calc.pos(G.inv[C[a]]), calc.pos(G.inv[C[b]])
        entries[(bi * n + ai) * n * n + a * n + b] = F.one
    return Mat(n * n, n * n, entries, F)


def star_defect(conn: FGConnection) -> list:
    """``sigma J conj(sigma) J - id`` where J is the antilinear flip-and-star on tensors."""
    J = star_matrix(conn.calc)
    S = conn.sigma
    M = S @ J @ S.conj() @ J - identity(S.rows, S.field)
    return list(M.entries)


def star_summed_defect(conn: FGConnection) -> list:
    """Same condition written as an explicit sum over one index.

    For a, b, c in C with ``d = c^-1 a b`` in C:
    ``sum_{b'} (Gamma^a_{a b b'^-1, b'} + [a == b']) conj(Gamma^{b'^-1}_{d^-1, c^-1} + [b'^-1 == c^-1]) = [a == c]``.
    A term is absent when ``a b b'^-1`` is not in C.
    """
    calc = conn.calc
    G, C, n, F = calc.group, calc.C, calc.n, calc.field
    if not calc.gens.inverse_closed:
        raise NotInverseClosed("star needs an inverse-closed generating set")
    inv = lambda k: calc.pos(G.inv[C[k]])  # noqa: E731
    out = []
    for a, b, c in itertools.product(range(n), repeat=3):
        d = calc.pos(G.mul(G.inv[C[c]], C[a], C[b]))
        if d is None:
            continue
        total = F.zero
        for bp in range(n):
            ap = calc.pos(G.mul(C[a], C[b], G.inv[C[bp]]))
            if ap is None:
                continue
            f1 = conn.gamma[a, ap, bp] + (F.one if a == bp else F.zero)
            bpi, ci, di = inv(bp), inv(c), inv(d)
            f2 = conn.gamma[bpi, di, ci] + (F.one if bpi == ci else F.zero)
            total = total + f1 * F.conj(f2)
        out.append(total - (F.one if a == c else F.zero))
    return out


def n_matrix(conn: FGConnection, g: int) -> Mat:
    """``N(g)[a][c] = Gamma^a_{g c^-1, c} + [a == c]`` (zero where ``g c^-1`` is not in C)."""
    calc = conn.calc
    G, C, n, F = calc.group, calc.C, calc.n, calc.field
    entries = []
    for a in range(n):
        for c in range(n):
            b = calc.pos(G.mult[g][G.inv[C[c]]])
            v = F.zero if b is None else conn.gamma[a, b, c]
            entries.append(v + (F.one if a == c else F.zero))
    return Mat(n, n, entries, F)


def braid_defects(conn: FGConnection) -> list:
    return list(braid_defect(conn.sigma, conn.calc.n).entries)


def invertible_defect(conn: FGConnection) -> list:
    """Empty when sigma is invertible, ``[1]`` otherwise.

    Numeric backends scale sigma to unit max entry first, so the test does not
    depend on the overall size of the parameters.
    """
    F = conn.field
    S = conn.sigma
    if not F.exact:
        top = S.max_abs()
        if top == 0:
            return [F.one]
        S = S.scale(1 / top)
    return [] if not F.is_zero(det(S)) else [F.one]


CONDITIONS: dict[str, Callable] = {
    "braid": lambda conn, g: braid_defects(conn),
    "invertible_sigma": lambda conn, g: invertible_defect(conn),
    "torsion_free": lambda conn, g: [x for row in torsion(conn) for x in row],
    "torsion_compatible": lambda conn, g: torsion_compat_defect(conn),
    "metric": lambda conn, g: metric_defect(conn, g),
    "cotorsion_free": lambda conn, g: cotorsion_defect(conn, g),
    "star_compatible": lambda conn, g: star_defect(conn),
}

_ALIASES = {
    "star": "star_compatible",
    "torsion": "torsion_free",
    "torsion-free": "torsion_free",
    "tf": "torsion_free",
    "torsion-compat": "torsion_compatible",
    "torsion-compatible": "torsion_compatible",
    "cotorsion": "cotorsion_free",
    "cotorsion-free": "cotorsion_free",
    "metric-preserving": "metric",
    "invertible": "invertible_sigma",
    "invertible-sigma": "invertible_sigma",
    "star-compatible": "star_compatible",
}


def normalize_conditions(names: Iterable[str]) -> frozenset[str]:
    out = set()
    for raw in names:
        name = raw.strip()
        if not name:
            continue
        name = _ALIASES.get(name, name).replace("-", "_")
        if name not in CONDITIONS:
            raise UnknownCondition(f"unknown condition {raw!r}; expected one of {sorted(CONDITIONS)}")
        out.add(name)
    return frozenset(out)


def defects(conn: FGConnection, name: str, g: FGMetric | None = None) -> list:
    if name not in CONDITIONS:
        raise UnknownCondition(name)
    return CONDITIONS[name](conn, g)


def check(conn: FGConnection, name: str, g: FGMetric | None = None) -> tuple[bool, float]:
    """``(holds, largest residual)`` for one named condition."""
    F = conn.field
    ds = defects(conn, name, g)
    ok = all(F.is_zero(x) for x in ds)
    resid = max((F.magnitude(x) for x in ds), default=0.0)
    return ok, resid


def is_torsion_compatible(conn: FGConnection) -> bool:
    return check(conn, "torsion_compatible")[0]


def is_metric_preserving(conn: FGConnection, g: FGMetric | None = None) -> bool:
    return check(conn, "metric", g)[0]


def is_cotorsion_free(conn: FGConnection, g: FGMetric | None = None) -> bool:
    return check(conn, "cotorsion_free", g)[0]


def is_star_compatible(conn: FGConnection) -> bool:
    return check(conn, "star_compatible")[0]


def sigma_power_check(conn: FGConnection, k: int):
    """``lam`` if ``sigma^k = lam * id``, else ``None``."""
    P = conn.sigma ** k
    F = conn.field
    lam = P[0, 0]
    if P.equals(identity(P.rows, F).scale(lam)):
        return lam
    return None


# ---------------------------------------------------------------------------
# S3 family registry
# ---------------------------------------------------------------------------

OMEGA = cmath.exp(2j * math.pi / 3)
SQRT3 = math.sqrt(3)
SQRT5 = math.sqrt(5)


@dataclass(frozen=True)
class Family:
    name: str
    ref: str
    conditions: frozenset
    exact: bool
    description: str
    sampler: Callable[[random.Random], S3Params] | None = None
    points: tuple = ()
    expect_pass: bool = True
    note: str = ""

    def samples(self, rng: random.Random, count: int) -> list[S3Params]:
        if self.points:
            return [S3Params(*p) for p in self.points]
        return [self.sampler(rng) for _ in range(count)]


def _cx(rng: random.Random) -> complex:
    while True:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z) > 0.1:
            return z


def _gr(rng: random.Random) -> GaussRat:
    while True:
        z = random_point(1000, rng)
        if z:
            return z


def _rr(rng: random.Random) -> GaussRat:
    while True:
        z = random_real(1000, rng)
        if z:
            return z


def _angle_params(theta: float, phi: float, psi: float) -> S3Params:
    k = math.cos(theta - phi)
    den = math.sqrt(1 + 8 * k * k)
    a = cmath.exp(1j * phi) / den
    b = -cmath.exp(1j * theta) * 2 * k / den
    c = 2 * cmath.exp(1j * psi) * math.cos(psi) / 3
    return S3Params(a, b, c, c, c - 1)


def sample_tf_star(rng: random.Random) -> S3Params:
    """Torsion-free star-compatible connection from three random angles."""
    delta = rng.uniform(-math.pi / 2, math.pi / 2) * 0.999
    theta = rng.uniform(-math.pi, math.pi)
    psi = rng.uniform(-math.pi / 2, math.pi / 2) * 0.999
    return _angle_params(theta, theta - delta, psi)


def r_line_params(r: float, sign_theta: int, sign_delta: int) -> S3Params:
    """Member of the one-parameter torsion-free, cotorsion-free, star-compatible line.

    ``cos(theta) = (1 + 3 r^2)/(4 r)``, ``cos(theta - phi) = r / (2 sqrt(1 - 2 r^2))``,
    ``cos(psi) = sqrt(9 (1 - r^2) / 8)``.  The sign of ``psi`` is tied to the
    sign of ``theta`` (``c = 1 + b`` forces ``sin(psi)`` and ``sin(theta)`` to
    have opposite signs); the sign of ``theta - phi`` is free.
    """
    clamp = lambda x: max(-1.0, min(1.0, x))  # noqa: E731
    theta = sign_theta * math.acos(clamp((1 + 3 * r * r) / (4 * r)))
    delta = sign_delta * math.acos(clamp(r / (2 * math.sqrt(1 - 2 * r * r))))
    psi = -sign_theta * math.acos(clamp(math.sqrt(9 * (1 - r * r) / 8)))
    return _angle_params(theta, theta - delta, psi)


def r_line_samples(rng: random.Random, count: int) -> list[tuple[float, int, int]]:
    rs = [1 / 3, 2 / 3, 0.4, 0.5, 0.6] + [rng.uniform(1 / 3, 2 / 3) for _ in range(max(0, count - 5))]
    out = []
    for k, r in enumerate(rs[:max(count, 5)]):
        out.append((r, 1 if k % 2 == 0 else -1, 1 if (k // 2) % 2 == 0 else -1))
    return out


def sample_star(rng: random.Random) -> S3Params:
    """Star-compatible: both N-matrices unitary (N(e) via angles, N(12) via its circulant eigenvalues)."""
    delta = rng.uniform(-math.pi / 2, math.pi / 2) * 0.999
    theta = rng.uniform(-math.pi, math.pi)
    base = _angle_params(theta, theta - delta, 0.0)
    lam = [cmath.exp(1j * rng.uniform(-math.pi, math.pi)) for _ in range(3)]
    d = sum(lam) / 3
    e = sum(lam[k] * OMEGA ** (-k) for k in range(3)) / 3
    c = sum(lam[k] * OMEGA ** (-2 * k) for k in range(3)) / 3
    return S3Params(base.a, base.b, c, d, e)


def _lemma4(sign: int):
    def s(rng):
        x = _cx(rng)
        b = x * (1 + sign * SQRT5) / 2
        return S3Params(x, b, 0, 0, x - b)
    return s


def _lemma5(w: complex):
    def s(rng):
        e = _cx(rng)
        b = w * e
        return S3Params(-e * b / (b + e), b, -(b + e), -(b + e), e)
    return s


def _lemma6(w: complex):
    def s(rng):
        e = _cx(rng)
        b = w * e
        return S3Params(e, b, e, b * b / e, e)
    return s


def _lemma7(w: complex):
    def s(rng):
        e = _cx(rng)
        b = w * e
        return S3Params(e, b, -b - e, -b * b / (b + e), e)
    return s


def _metric_braid_iii(w: complex):
    def s(rng):
        a = rng.uniform(-2, 2) or 1.0
        e = a * w
        return S3Params(a, e.conjugate(), a, a, e)
    return s


def _tf_braid_ii(sign: int) -> tuple:
    b = (3 + sign * SQRT5) / 2
    return ((b - 1, b, 0, 0, -1),)


def _tf_braid_iii(sign: int, literal: bool) -> tuple:
    s = sign
    a = (3 + s * 1j * SQRT3) / (3 + s * 3j * SQRT3)
    b = s * 1j / SQRT3
    c = (3 - s * 1j * SQRT3) / 6
    e = -(-3 + s * 1j * SQRT3) / 6 if literal else (-3 - s * 1j * SQRT3) / 6
    return ((a, b, c, c, e),)


def _fs(*names: str) -> frozenset:
    return frozenset(names)


BRAID = _fs("braid", "invertible_sigma")

FAMILIES: tuple[Family, ...] = (
    # invertible sigma obeying the braid relations: seven cases
    Family("braid-1", "braid case 1: b=c=d=0, a=e", BRAID, True, "a = e != 0 random",
           lambda r: (lambda x: S3Params(x, 0, 0, 0, x))(_gr(r))),
    Family("braid-2", "braid case 2: b=e=c=0, d=a", BRAID, True, "d = a != 0 random",
           lambda r: (lambda x: S3Params(x, 0, 0, x, 0))(_gr(r))),
    Family("braid-3", "braid case 3: b=d=e=0, c=a", BRAID, True, "c = a != 0 random",
           lambda r: (lambda x: S3Params(x, 0, x, 0, 0))(_gr(r))),
    Family("braid-4+", "braid case 4: c=d=0, e=-a^2/b=a-b", BRAID, False, "b = a(1+sqrt5)/2, e = a - b", _lemma4(1)),
    Family("braid-4-", "braid case 4: c=d=0, e=-a^2/b=a-b", BRAID, False, "b = a(1-sqrt5)/2, e = a - b", _lemma4(-1)),
    Family("braid-5w", "braid case 5: c=d=-(b+e), a=-eb/(b+e), b^2+be+e^2=0", BRAID, False, "b = w e", _lemma5(OMEGA)),
    Family("braid-5w*", "braid case 5: c=d=-(b+e), a=-eb/(b+e), b^2+be+e^2=0", BRAID, False, "b = conj(w) e", _lemma5(OMEGA.conjugate())),
    Family("braid-6w", "braid case 6: a=c=e, d=b^2/e, b^2+be+e^2=0", BRAID, False, "b = w e", _lemma6(OMEGA)),
    Family("braid-6w*", "braid case 6: a=c=e, d=b^2/e, b^2+be+e^2=0", BRAID, False, "b = conj(w) e", _lemma6(OMEGA.conjugate())),
    Family("braid-7w", "braid case 7: a=e, c=-b-e, d=-b^2/(b+e), b^2+be+e^2=0", BRAID, False, "b = w e", _lemma7(OMEGA)),
    Family("braid-7w*", "braid case 7: a=e, c=-b-e, d=-b^2/(b+e), b^2+be+e^2=0", BRAID, False, "b = conj(w) e", _lemma7(OMEGA.conjugate())),
    # single conditions
    Family("torsion-free-plane", "torsion free iff d = c = e + 1", _fs("torsion_free"), True, "a, b, e random; c = d = e + 1",
           lambda r: (lambda a, b, e: S3Params(a, b, e + 1, e + 1, e))(_gr(r), _gr(r), _gr(r))),
    Family("metric-preserving", "metric iff a, c, d real and e = b*", _fs("metric"), True, "a, c, d real; e = conj(b)",
           lambda r: (lambda a, b, c, d: S3Params(a, b, c, d, b.conjugate()))(_rr(r), _gr(r), _rr(r), _rr(r))),
    Family("cotorsion-free", "cotorsion free iff e - b* = c - c* = d - d*", _fs("cotorsion_free"), True,
           "b, c random; d = x + i Im(c); e = conj(b) + 2i Im(c)",
           lambda r: (lambda a, b, c, x: S3Params(a, b, c, x + (c - c.conjugate()) / 2, b.conjugate() + (c - c.conjugate())))(_gr(r), _gr(r), _gr(r), _rr(r))),
    Family("star-compatible", "star compatible iff N(e), N(12) unitary", _fs("star_compatible"), False,
           "N(e) from two angles, N(12) from three unit eigenvalues", sample_star),
    # conjunctions
    Family("tf-star-angles", "torsion free + star compatible: three-angle moduli", _fs("torsion_free", "star_compatible"), False,
           "a = e^{i phi}/s, b = -2 e^{i theta} cos(theta-phi)/s, c = d = 2 e^{i psi} cos(psi)/3, e = c - 1", sample_tf_star),
    Family("tf-cotf-star-line", "torsion free + cotorsion free + star compatible: r in [1/3, 2/3]",
           _fs("torsion_free", "cotorsion_free", "star_compatible"), False,
           "r in [1/3, 2/3] with endpoints; sign(psi) = -sign(theta)", None),
    Family("metric-tf-plane", "metric + torsion free: a, c real, c = d = e + 1 = b + 1", _fs("metric", "torsion_free"), True,
           "a, c real random; b = e = c - 1",
           lambda r: (lambda a, c: S3Params(a, c - 1, c, c, c - 1))(_rr(r), _rr(r))),
    Family("metric-tf-point", "torsion-free, cotorsion-free metric point (5/3, -1/3, 2/3, 2/3, -1/3)",
           _fs("metric", "torsion_free", "cotorsion_free"), True, "single point",
           points=((GaussRat(5) / 3, GaussRat(-1) / 3, GaussRat(2) / 3, GaussRat(2) / 3, GaussRat(-1) / 3),)),
    Family("metric-star-i", "metric + star: b=e=c=0, a=+-1, d=+-1", _fs("metric", "star_compatible"), True, "four sign choices",
           points=tuple((s, 0, 0, t, 0) for s in (1, -1) for t in (1, -1))),
    Family("metric-star-ii", "metric + star: b=e=d=0, a=+-1, c=+-1", _fs("metric", "star_compatible"), True, "four sign choices",
           points=tuple((s, 0, t, 0, 0) for s in (1, -1) for t in (1, -1))),
    Family("metric-star-iii", "metric + star: a=d=+-1/3, b=e=c=-+2/3", _fs("metric", "star_compatible"), True, "two sign choices",
           points=tuple((GaussRat(s) / 3, GaussRat(-2 * s) / 3, GaussRat(-2 * s) / 3, GaussRat(s) / 3, GaussRat(-2 * s) / 3) for s in (1, -1))),
    Family("metric-star-iv", "metric + star: a=c=+-1/3, b=e=d=-+2/3", _fs("metric", "star_compatible"), True, "two sign choices",
           points=tuple((GaussRat(s) / 3, GaussRat(-2 * s) / 3, GaussRat(s) / 3, GaussRat(-2 * s) / 3, GaussRat(-2 * s) / 3) for s in (1, -1))),
    Family("braid-tf-i", "braid + torsion free: a=e=-1, b=c=d=0", BRAID | {"torsion_free"}, True, "single point",
           points=((-1, 0, 0, 0, -1),)),
    Family("braid-tf-ii+", "braid + torsion free: c=d=0, e=-1, b=(3+sqrt5)/2, a=b-1", BRAID | {"torsion_free"}, False, "single point",
           points=_tf_braid_ii(1)),
    Family("braid-tf-ii-", "braid + torsion free: c=d=0, e=-1, b=(3-sqrt5)/2, a=b-1", BRAID | {"torsion_free"}, False, "single point",
           points=_tf_braid_ii(-1)),
    Family("braid-tf-iii+ (as printed)", "braid + torsion free, third case with e = -(-3+i sqrt3)/6",
           BRAID | {"torsion_free"}, False, "single point", points=_tf_braid_iii(1, True), expect_pass=False,
           note="fails as printed; e must equal c - 1, see the corrected entry"),
    Family("braid-tf-iii- (as printed)", "braid + torsion free, third case with e = -(-3-i sqrt3)/6",
           BRAID | {"torsion_free"}, False, "single point", points=_tf_braid_iii(-1, True), expect_pass=False,
           note="fails as printed; e must equal c - 1, see the corrected entry"),
    Family("braid-tf-iii+", "braid + torsion free, third case with e = c - 1 = (-3-i sqrt3)/6",
           BRAID | {"torsion_free"}, False, "single point", points=_tf_braid_iii(1, False)),
    Family("braid-tf-iii-", "braid + torsion free, third case with e = c - 1 = (-3+i sqrt3)/6",
           BRAID | {"torsion_free"}, False, "single point", points=_tf_braid_iii(-1, False)),
    Family("braid-metric-i", "braid + metric: b=e=c=0, d=a real", BRAID | {"metric"}, True, "a real random",
           lambda r: (lambda x: S3Params(x, 0, 0, x, 0))(_rr(r))),
    Family("braid-metric-ii", "braid + metric: b=d=e=0, c=a real", BRAID | {"metric"}, True, "a real random",
           lambda r: (lambda x: S3Params(x, 0, x, 0, 0))(_rr(r))),
    Family("braid-metric-iii+", "braid + metric: c=d=a real, e = a e^{2 pi i/3} = b*", BRAID | {"metric"}, False, "a real random",
           _metric_braid_iii(OMEGA)),
    Family("braid-metric-iii-", "braid + metric: c=d=a real, e = a e^{-2 pi i/3} = b*", BRAID | {"metric"}, False, "a real random",
           _metric_braid_iii(OMEGA.conjugate())),
    Family("braid-metric-star-i", "braid + metric + star: b=e=c=0, a=d=+-1 (sigma^3 = +-1)",
           BRAID | {"metric", "star_compatible"}, True, "two sign choices", points=((1, 0, 0, 1, 0), (-1, 0, 0, -1, 0))),
    Family("braid-metric-star-ii", "braid + metric + star: b=d=e=0, c=a=+-1 (sigma^3 = +-1)",
           BRAID | {"metric", "star_compatible"}, True, "two sign choices", points=((1, 0, 1, 0, 0), (-1, 0, -1, 0, 0))),
)

# conjunctions known to have no solutions at all
EMPTY_CONJUNCTIONS = (
    _fs("metric", "torsion_free", "star_compatible"),
    BRAID | {"torsion_free", "cotorsion_free"},
    # claimed empty, but the first and (corrected) third braid + torsion-free
    # points are star compatible; the classifier reports them as witnesses
    BRAID | {"torsion_free", "star_compatible"},
)


def _lookup_key(conds: frozenset) -> frozenset:
    key = set(conds)
    if "torsion_compatible" in key:  # equivalent to torsion-free on S3
        key.discard("torsion_compatible")
        key.add("torsion_free")
    if "braid" in key:
        key.add("invertible_sigma")
    return frozenset(key)


def _family_samples(fam: Family, rng: random.Random, count: int) -> list[S3Params]:
    if fam.name == "tf-cotf-star-line":
        return [r_line_params(r, st, sd) for r, st, sd in r_line_samples(rng, count)]
    return fam.samples(rng, count)


def _eval_point(params: S3Params, conds: Iterable[str], field: Field, stop_early: bool = False):
    conn = s3_connection(params.coerce(field), field)
    ok_all = True
    worst = 0.0
    failed = []
    for name in sorted(conds):
        ok, resid = check(conn, name)
        worst = max(worst, resid)
        if not ok:
            ok_all = False
            failed.append(name)
            if stop_early:
                break
    return ok_all, worst, failed


def classify_s3(conditions: Iterable[str], backend: str = "gauss", samples: int = 50, off_samples: int = 100,
                seed: int = 0, tol: float = 1e-10) -> dict:
    """Certify the catalogued solution families of a conjunction of conditions.

    Exact families are checked in Gaussian rationals (unless ``backend`` is
    ``cdouble``); families involving irrational numbers are checked
    numerically with tolerance ``tol``.  Random points off the families must
    fail the conjunction.
    """
    conds = normalize_conditions(conditions)
    if not conds:
        raise UnknownCondition("at least one condition is required")
    key = _lookup_key(conds)
    numeric = cdouble_field(tol)
    rng = random.Random(seed)

    catalogued = [f for f in FAMILIES if f.conditions == key]
    empty = key in EMPTY_CONJUNCTIONS
    if not catalogued and not empty:
        catalogued = [f for f in FAMILIES if key <= f.conditions]
    tested = list(FAMILIES) if empty else catalogued

    fam_reports = []
    all_good = True
    for fam in tested:
        exact = fam.exact and backend != "cdouble"
        field = GAUSS if exact else numeric
        pts = _family_samples(fam, rng, samples)
        results = [_eval_point(p, conds, field, stop_early=empty) for p in pts]
        passed = all(r[0] for r in results)
        if empty:
            expect = False
            good = not any(r[0] for r in results)
        else:
            expect = fam.expect_pass
            good = passed == expect
        all_good &= good
        worst = max(r[1] for r in results)
        witness_idx = next((k for k, r in enumerate(results) if r[0] != expect), 0)
        fam_reports.append({
            "name": fam.name,
            "ref": fam.ref,
            "params_or_sampler": fam.description,
            "backend": field.name,
            "samples": len(pts),
            "pass": passed if not empty else any(r[0] for r in results),
            "expected": expect,
            "ok": good,
            "note": fam.note,
            "witness": {
                "params": pts[witness_idx].format(field),
                "max_residual": _round(worst),
                "failed_conditions": results[witness_idx][2],
            },
        })

    off_rng = random.Random(seed + 1)
    off_pass = 0
    for _ in range(off_samples):
        p = S3Params(*(random_point(1000, off_rng) for _ in range(5)))
        if _eval_point(p, conds, GAUSS, stop_early=True)[0]:
            off_pass += 1
    all_good &= off_pass == 0

    return {
        "condition_set": sorted(conds),
        "catalogued": bool(catalogued) or empty,
        "empty": empty,
        "families": fam_reports,
        "off_family_samples": {"count": off_samples, "passing": off_pass, "backend": GAUSS.name},
        "seed": seed,
        "backend": backend,
        "tolerance": tol,
        "ok": all_good,
    }


def _round(x: float) -> float:
    return float(f"{x:.3e}")
