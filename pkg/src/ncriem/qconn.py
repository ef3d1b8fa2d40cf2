"""Left-invariant, right-U(1)-invariant bimodule connections on C_q[SU2] with the 3D calculus.

The connection is fixed by seven numbers:

    nabla(e+) = n+ e0(x)e+ + m+ e+(x)e0
    nabla(e-) = n- e0(x)e- + m- e-(x)e0
    nabla(e0) = r e0(x)e0 + nu e+(x)e- + mu e-(x)e+

Basis order is (+, 0, -), tensors ``e^i (x) e^j`` sit at index ``3i + j`` and
matrices act as ``M[out, in]``.  Every parameter (and q) may live in any scalar
backend: symbolic q (``QRatFn``), exact rational q (``GaussRat``) or floats.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from . import qalg
from .matrixkit import Mat, braid_defect, identity, solve_affine, kernel_basis
from .scalars import GAUSS, QRAT, Field, GaussRat, QRatFn, cdouble_field

__all__ = [
    "QSU2Connection",
    "QMetric",
    "BadQ",
    "BadMetric",
    "DegenerateN",
    "NonPositiveDisc",
    "sigma9",
    "sigma9_display",
    "wedge_matrix",
    "torsion_q",
    "torsion_from_wedge",
    "torsion_from_qalg",
    "predicates",
    "flags",
    "braided_points",
    "star_preserving_points",
    "braided_point_table_check",
    "classical_probe",
    "star_compat_defect",
    "star_compat_formula_defect",
    "torsion_compat_defect",
    "torsion_compat_formula_defect",
    "metric_defect",
    "metric_formula_defect",
    "gamma_star_defect",
    "r_choices",
    "braided_rule",
    "eigen_table_check",
    "family_6_2_2",
    "levi_civita_solve",
    "special_points",
    "classical_limit_check",
    "sphere_descent_check",
]

P, Z, M = 0, 1, 2
LABELS = ("+", "0", "-")
PARAMS = ("n_plus", "n_minus", "m_plus", "m_minus", "r", "nu", "mu")


class BadQ(ValueError):
    pass


class BadMetric(ValueError):
    pass


class DegenerateN(ValueError):
    pass


class NonPositiveDisc(ArithmeticError):
    pass


def _idx(i: int, j: int) -> int:
    return 3 * i + j


@dataclass(frozen=True)
class QSU2Connection:
    n_plus: object
    n_minus: object
    m_plus: object
    m_minus: object
    r: object
    nu: object
    mu: object
    q: object
    field: Field = dc_field(default=QRAT, compare=False)

    @classmethod
    def make(cls, q=None, field: Field = QRAT, **params) -> "QSU2Connection":
        unknown = set(params) - set(PARAMS)
        if unknown:
            raise TypeError(f"unknown parameters {sorted(unknown)}")
        if q is None:
            if field is not QRAT:
                raise BadQ("a numeric q is required outside the symbolic backend")
            q = QRatFn.q()
        vals = {k: field.coerce(params.get(k, 0)) for k in PARAMS}
        return cls(q=field.coerce(q), field=field, **vals)

    def with_params(self, **params) -> "QSU2Connection":
        vals = {k: getattr(self, k) for k in PARAMS}
        vals.update({k: self.field.coerce(v) for k, v in params.items()})
        return QSU2Connection(q=self.q, field=self.field, **vals)

    def params(self) -> dict:
        return {k: getattr(self, k) for k in PARAMS}

    def rho(self):
        """Eigenvalue of sigma on e0 (x) e0."""
        return self.field.one + self.r * (self.field.one - self.q ** 2)

    def y_plus(self):
        return self.field.one + self.n_plus * (self.field.one - self.q ** 2)

    def y_minus(self):
        return self.field.one + self.n_minus * (self.field.one - self.q ** 2)

    def nabla(self) -> dict[int, dict[tuple[int, int], object]]:
        """``nabla(e^i)`` as ``{(a, b): coefficient of e^a (x) e^b}``."""
        return {
            P: {(Z, P): self.n_plus, (P, Z): self.m_plus},
            M: {(Z, M): self.n_minus, (M, Z): self.m_minus},
            Z: {(Z, Z): self.r, (P, M): self.nu, (M, P): self.mu},
        }

    def format(self) -> dict:
        F = self.field
        out = {k: F.format(getattr(self, k)) for k in PARAMS}
        out["q"] = F.format(self.q)
        return out


@dataclass(frozen=True)
class QMetric:
    """Diagonal Hermitian metric ``(g++, g00, g--)``; all entries strictly positive."""

    gpp: object
    g00: object
    gmm: object

    def __post_init__(self):
        for name in ("gpp", "g00", "gmm"):
            v = getattr(self, name)
            try:
                z = complex(v)
            except (TypeError, ValueError) as exc:
                raise BadMetric(f"{name} must be a number") from exc
            if abs(z.imag) > 0 or not z.real > 0:
                raise BadMetric(f"{name} must be real and strictly positive, got {v}")

    def coerce(self, F: Field) -> tuple:
        return tuple(F.coerce(x) for x in (self.gpp, self.g00, self.gmm))

    def diag(self, F: Field) -> tuple:
        return self.coerce(F)

    def to_json(self) -> list:
        return [str(x) for x in (self.gpp, self.g00, self.gmm)]


def _weights(conn: QSU2Connection) -> tuple:
    q = conn.q
    return (q, q * q, q)


# ---------------------------------------------------------------------------
# sigma
# ---------------------------------------------------------------------------


def sigma9(conn: QSU2Connection) -> Mat:
    """General construction.

    ``sigma(xi (x) e0) = e0 (x) xi + nabla(xi) - (nabla(xi <| z^-1)) <| z`` and
    ``sigma(xi (x) e+-) = e+- (x) xi <| z^(+-2)`` with ``e+- <| z = q e+-``,
    ``e0 <| z = q^2 e0``.
    """
    F = conn.field
    w = _weights(conn)
    ent = [F.zero] * 81
    nab = conn.nabla()
    for i in range(3):
        # xi (x) e0
        col = _idx(i, Z)
        ent[_idx(Z, i) * 9 + col] += F.one
        for (a, b), cf in nab[i].items():
            ent[_idx(a, b) * 9 + col] += cf * (F.one - w[a] * w[b] / w[i])
        # xi (x) e+ and xi (x) e-
        ent[_idx(P, i) * 9 + _idx(i, P)] += w[i] ** 2
        ent[_idx(M, i) * 9 + _idx(i, M)] += w[i] ** -2
    return Mat(9, 9, ent, F)


def sigma9_display(conn: QSU2Connection) -> Mat:
    """The 9x9 matrix written out entry by entry (independent of ``sigma9``)."""
    F = conn.field
    q = conn.q
    one = F.one
    o = one - q ** 2
    ent = {
        (0, 0): q ** 2,
        (1, 1): conn.m_plus * o,
        (1, 3): q ** 4,
        (2, 6): q ** 2,
        (3, 1): one + conn.n_plus * o,
        (4, 4): one + conn.r * o,
        (5, 7): one + conn.n_minus * o,
        (6, 2): q ** -2,
        (7, 5): q ** -4,
        (7, 7): conn.m_minus * o,
        (8, 8): q ** -2,
    }
    return Mat(9, 9, [ent.get((i, j), F.zero) for i in range(9) for j in range(9)], F)


def star_signs(conn: QSU2Connection) -> tuple:
    """``(e^k)* = s_k e^{phi(k)}``: ``e+* = -q^-1 e-``, ``e0* = -e0``, ``e-* = -q e+``."""
    q = conn.q
    return (-(q ** -1), -conn.field.one, -q)


PHI = (M, Z, P)


def star_matrix(conn: QSU2Connection) -> Mat:
    """``e^i (x) e^j -> (e^j)* (x) (e^i)*`` on constant tensors (antilinear part handled by conj)."""
    F = conn.field
    s = star_signs(conn)
    ent = [F.zero] * 81
    for i, j in itertools.product(range(3), repeat=2):
        ent[_idx(PHI[j], PHI[i]) * 9 + _idx(i, j)] = s[i] * s[j]
    return Mat(9, 9, ent, F)


def wedge_matrix(conn: QSU2Connection) -> Mat:
    """Lambda^2 coordinates (e+^e-, e+^e0, e-^e0) of each ``e^i (x) e^j``."""
    F = conn.field
    q = conn.q
    ent = [F.zero] * 27
    table = {
        (P, M): (0, F.one), (M, P): (0, -(q ** 2)),
        (P, Z): (1, F.one), (Z, P): (1, -(q ** 4)),
        (M, Z): (2, F.one), (Z, M): (2, -(q ** -4)),
    }
    for (i, j), (row, c) in table.items():
        ent[row * 9 + _idx(i, j)] = c
    return Mat(3, 9, ent, F)


def d_basis(conn: QSU2Connection) -> dict[int, list]:
    """``de^i`` in Lambda^2 coordinates."""
    F = conn.field
    q = conn.q
    two = F.one + q ** -2
    return {
        Z: [q ** 3, F.zero, F.zero],
        P: [F.zero, -(q ** 2) * two, F.zero],
        M: [F.zero, F.zero, q ** -2 * two],
    }


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------


def torsion_q(conn: QSU2Connection) -> tuple:
    """Closed form ``(t+, t0, t-)``: ``T(e+-) = t+- e+-^e0`` and ``T(e0) = t0 e+^e-``."""
    F = conn.field
    q = conn.q
    two = F.one + q ** -2
    tp = conn.m_plus - q ** 4 * conn.n_plus + q ** 2 * two
    tm = conn.m_minus - q ** -4 * conn.n_minus - q ** -2 * two
    t0 = conn.nu - q ** 2 * conn.mu - q ** 3
    return tp, t0, tm


def torsion_from_wedge(conn: QSU2Connection) -> dict[int, list]:
    """``wedge(nabla e^i) - de^i`` computed from the wedge matrix."""
    F = conn.field
    W = wedge_matrix(conn)
    db = d_basis(conn)
    out = {}
    for i, terms in conn.nabla().items():
        vec = [F.zero] * 9
        for (a, b), cf in terms.items():
            vec[_idx(a, b)] += cf
        w = W.apply(vec)
        out[i] = [x - y for x, y in zip(w, db[i])]
    return out


def torsion_from_qalg(conn: QSU2Connection) -> dict[int, qalg.QForm2]:
    """Same torsion re-derived with the algebra engine (needs symbolic q).

    ``de^i`` comes from differentiating the x.dy definitions of the basis,
    so nothing here reuses the closed forms.
    """
    if conn.field is not QRAT or conn.q != QRatFn.q():
        raise BadQ("the algebra engine works with symbolic q only")
    out = {}
    for i, terms in conn.nabla().items():
        acc = qalg.QForm2.zero()
        for (a, b), cf in terms.items():
            acc = acc + qalg.wedge(qalg.basis_form(a).scale(cf), qalg.basis_form(b))
        out[i] = acc - qalg.d_basis_from_definition(i)
    return out


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def torsion_compat_defect(conn: QSU2Connection) -> list:
    S = sigma9(conn)
    return list((wedge_matrix(conn) @ (identity(9, conn.field) + S)).entries)


def torsion_compat_formula_defect(conn: QSU2Connection) -> list:
    F = conn.field
    q = conn.q
    return [conn.m_plus - (q ** 4 * conn.n_plus - (F.one + q ** 2)),
            conn.m_minus - q ** -4 * (conn.n_minus + F.one + q ** 2)]


def star_compat_defect(conn: QSU2Connection) -> list:
    """``sigma J conj(sigma) J - id``."""
    S = sigma9(conn)
    J = star_matrix(conn)
    return list((S @ J @ S.conj() @ J - identity(9, conn.field)).entries)


def star_compat_formula_defect(conn: QSU2Connection) -> list:
    """Closed-form star compatibility, cleared of denominators."""
    F = conn.field
    q = conn.q
    yp = conn.y_plus()
    r = conn.r
    return [F.conj(conn.n_minus) * yp + conn.n_plus,
            F.conj(conn.m_minus) * yp + q ** -4 * conn.m_plus,
            F.conj(r) + r + r * F.conj(r) * (F.one - q ** 2)]


def star_preserving_extra_defect(conn: QSU2Connection) -> list:
    return [conn.nu + conn.field.conj(conn.mu) * conn.q ** 2]


def christoffel_forms(conn: QSU2Connection) -> list[list[dict]]:
    """``Gamma[i][k]`` as ``{basis index: coefficient}`` with ``nabla e^i = -Gamma[i][k] (x) e^k``."""
    c = conn
    return [
        [{Z: -c.n_plus}, {P: -c.m_plus}, {}],
        [{M: -c.mu}, {Z: -c.r}, {P: -c.nu}],
        [{}, {M: -c.m_minus}, {Z: -c.n_minus}],
    ]


def _star_const_form(conn: QSU2Connection, form: dict) -> dict:
    s = star_signs(conn)
    F = conn.field
    return {PHI[k]: F.conj(v) * s[k] for k, v in form.items()}


def _form_diff(F: Field, x: dict, y: dict) -> list:
    keys = set(x) | set(y)
    return [x.get(k, F.zero) - y.get(k, F.zero) for k in sorted(keys)]


def metric_defect(conn: QSU2Connection, g: QMetric) -> list:
    """The matrix of 1-forms ``g . Gamma`` must be anti-Hermitian."""
    F = conn.field
    gd = g.coerce(F)
    Gam = christoffel_forms(conn)
    gG = [[{k: gd[i] * v for k, v in Gam[i][j].items()} for j in range(3)] for i in range(3)]
    out = []
    for i, j in itertools.product(range(3), repeat=2):
        st = _star_const_form(conn, gG[j][i])
        neg = {k: -v for k, v in st.items()}
        out.extend(_form_diff(F, gG[i][j], neg))
    return out


def metric_formula_defect(conn: QSU2Connection, g: QMetric) -> list:
    F = conn.field
    q = conn.q
    gpp, g00, gmm = g.coerce(F)
    out = [conn.n_plus - F.conj(conn.n_plus), conn.n_minus - F.conj(conn.n_minus), conn.r - F.conj(conn.r)]
    out.append(gpp * F.conj(conn.m_plus) - q * g00 * conn.mu)
    out.append(g00 * F.conj(conn.nu) - q * gmm * conn.m_minus)
    return out


def braided_rule(conn: QSU2Connection, corrected: bool = True) -> bool:
    """Case rule for the braid relations.

    Either ``m+ = m- = 0``, or one of two exceptional cases.  With
    ``corrected=False`` the exceptional cases use ``m+ = q^2 n+`` and
    ``m- = q^-2 n-``; the braid relations actually need ``m+ = -q^2 n+`` and
    ``m- = -q^-2 n-`` (see ``braid_defect``), which ``corrected=True`` uses.
    """
    F = conn.field
    q = conn.q
    one = F.one
    o = one - q ** 2
    rho = conn.rho()
    sgn = -one if corrected else one
    if F.is_zero(conn.m_plus) and F.is_zero(conn.m_minus):
        return True
    case1 = (F.eq(conn.n_plus * o, -one - q ** -2 * rho) and F.eq(conn.n_minus, -(one + q ** 2))
             and F.eq(conn.m_plus, sgn * q ** 2 * conn.n_plus) and F.is_zero(conn.m_minus))
    case2 = (F.eq(conn.n_plus, q ** -4 * (one + q ** 2)) and F.eq(conn.n_minus * o, -one - q ** 2 * rho)
             and F.is_zero(conn.m_plus) and F.eq(conn.m_minus, sgn * q ** -2 * conn.n_minus))
    return case1 or case2


def _holds(F: Field, defects: list) -> tuple[bool, float]:
    ok = all(F.is_zero(x) for x in defects)
    return ok, max((F.magnitude(x) for x in defects), default=0.0)


def predicates(conn: QSU2Connection, g: QMetric | None = None) -> dict:
    """All compatibility flags with the largest residual of each check."""
    F = conn.field
    g = g or QMetric(1, 1, 1)
    t = torsion_q(conn)
    checks = {
        "torsion_free": list(t),
        "torsion_compatible": torsion_compat_defect(conn),
        "star_compatible": star_compat_defect(conn),
        "metric_preserving": metric_defect(conn, g),
        "braided": list(braid_defect(sigma9(conn), 3).entries),
    }
    out = {}
    for name, ds in checks.items():
        ok, res = _holds(F, ds)
        out[name] = {"holds": ok, "residual": res}
    sp_ok, sp_res = _holds(F, star_preserving_extra_defect(conn))
    out["star_preserving"] = {
        "holds": out["star_compatible"]["holds"] and sp_ok,
        "residual": max(out["star_compatible"]["residual"], sp_res),
    }
    return out


def flags(conn: QSU2Connection, g: QMetric | None = None) -> dict[str, bool]:
    return {k: v["holds"] for k, v in predicates(conn, g).items()}


# ---------------------------------------------------------------------------
# eigenvectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Ext:
    """``x + y s`` with ``s^2 = base`` (a formal square root)."""

    x: object
    y: object
    base: object

    def __add__(self, o):
        return _Ext(self.x + o.x, self.y + o.y, self.base)

    def __mul__(self, o):
        return _Ext(self.x * o.x + self.y * o.y * self.base, self.x * o.y + self.y * o.x, self.base)

    def scale(self, c):
        return _Ext(self.x * c, self.y * c, self.base)


def _ext_eigen_ok(F: Field, S: Mat, vec: list, lam: _Ext) -> bool:
    zero = _Ext(F.zero, F.zero, lam.base)
    for out in range(9):
        acc = zero
        for k in range(9):
            if not F.is_zero(S[out, k]):
                acc = acc + vec[k].scale(S[out, k])
        rhs = lam * vec[out]
        if not (F.eq(acc.x, rhs.x) and F.eq(acc.y, rhs.y)):
            return False
    return True


def eigen_table_check(conn: QSU2Connection) -> dict:
    """Verify the nine eigenvector rows of sigma when ``m+ = m- = 0``.

    Rows with ``q+- = sqrt(1 + n+-(1 - q^2))`` are checked exactly in the
    extension by a formal square root.  Two placements of ``q+-`` are tried:
    on the second tensor term only (``attached``) and as an overall factor
    (``overall``, equivalent to dropping it from the vector).
    """
    F = conn.field
    if not (F.is_zero(conn.m_plus) and F.is_zero(conn.m_minus)):
        raise ValueError("the eigenvector table applies only when m+ = m- = 0")
    q = conn.q
    S = sigma9(conn)
    rows = []

    def plain(name, coeffs, lam):
        vec = [F.zero] * 9
        for (i, j), c in coeffs.items():
            vec[_idx(i, j)] = c
        ext = [_Ext(v, F.zero, F.one) for v in vec]
        ok = _ext_eigen_ok(F, S, ext, _Ext(lam, F.zero, F.one))
        rows.append({"vector": name, "reading": "exact", "ok": ok})

    one = F.one
    plain("q^2 e+(x)e- + e-(x)e+", {(P, M): q ** 2, (M, P): one}, one)
    plain("q^2 e+(x)e- - e-(x)e+", {(P, M): q ** 2, (M, P): -one}, -one)
    plain("e0(x)e0", {(Z, Z): one}, conn.rho())
    plain("e+(x)e+", {(P, P): one}, q ** 2)
    plain("e-(x)e-", {(M, M): one}, q ** -2)

    yp, ym = conn.y_plus(), conn.y_minus()
    for sign, sname in ((one, "+"), (-one, "-")):
        for reading in ("attached", "overall"):
            # q^2 e+(x)e0 +- q+ e0(x)e+, eigenvalue +- q^2 q+
            vec = [_Ext(F.zero, F.zero, yp) for _ in range(9)]
            vec[_idx(P, Z)] = _Ext(q ** 2, F.zero, yp)
            vec[_idx(Z, P)] = _Ext(F.zero, sign, yp) if reading == "attached" else _Ext(sign, F.zero, yp)
            ok = _ext_eigen_ok(F, S, vec, _Ext(F.zero, sign * q ** 2, yp))
            rows.append({"vector": f"q^2 e+(x)e0 {sname} q+ e0(x)e+", "reading": reading, "ok": ok})
            # q^2 q- e0(x)e- +- e-(x)e0, eigenvalue +- q^-2 q-
            vec = [_Ext(F.zero, F.zero, ym) for _ in range(9)]
            vec[_idx(Z, M)] = _Ext(F.zero, q ** 2, ym) if reading == "attached" else _Ext(q ** 2, F.zero, ym)
            vec[_idx(M, Z)] = _Ext(sign, F.zero, ym)
            ok = _ext_eigen_ok(F, S, vec, _Ext(F.zero, sign * q ** -2, ym))
            rows.append({"vector": f"q^2 q- e0(x)e- {sname} e-(x)e0", "reading": reading, "ok": ok})

    attached_ok = all(r["ok"] for r in rows if r["reading"] in ("exact", "attached"))
    overall_ok = all(r["ok"] for r in rows if r["reading"] in ("exact", "overall"))
    return {"rows": rows, "attached_reading_ok": attached_ok, "overall_reading_ok": overall_ok}


def braided_point_table_check(conn: QSU2Connection) -> list[dict]:
    """The nine eigenpairs at the two braided points (no square roots needed there)."""
    F = conn.field
    q = conn.q
    one = F.one
    S = sigma9(conn)
    table = [
        ("q^2 e+(x)e- + e-(x)e+", {(P, M): q ** 2, (M, P): one}, one),
        ("q^2 e+(x)e- - e-(x)e+", {(P, M): q ** 2, (M, P): -one}, -one),
        ("e0(x)e0", {(Z, Z): one}, conn.rho()),
        ("q^2 e+(x)e0 + q^-2 e0(x)e+", {(P, Z): q ** 2, (Z, P): q ** -2}, one),
        ("q^2 e+(x)e0 - q^-2 e0(x)e+", {(P, Z): q ** 2, (Z, P): -(q ** -2)}, -one),
        ("q^4 e0(x)e- + e-(x)e0", {(Z, M): q ** 4, (M, Z): one}, one),
        ("q^4 e0(x)e- - e-(x)e0", {(Z, M): q ** 4, (M, Z): -one}, -one),
        ("e+(x)e+", {(P, P): one}, q ** 2),
        ("e-(x)e-", {(M, M): one}, q ** -2),
    ]
    rows = []
    for name, coeffs, lam in table:
        vec = [F.zero] * 9
        for (i, j), c in coeffs.items():
            vec[_idx(i, j)] = c
        out = S.apply(vec)
        ok = all(F.eq(a, lam * b) for a, b in zip(out, vec))
        rows.append({"vector": name, "eigenvalue": F.format(lam), "ok": ok})
    return rows


# ---------------------------------------------------------------------------
# families and special points
# ---------------------------------------------------------------------------


def _check_q(F: Field, q) -> None:
    q = F.coerce(q)
    if F.is_zero(q) or F.is_zero(q * q - F.one):
        raise BadQ("q must be nonzero with q^2 != 1")


def r_choices(F: Field, q) -> tuple:
    """The two admissible values of r: 0 and 2/(q^2 - 1)."""
    _check_q(F, q)
    q = F.coerce(q)
    return (F.zero, F.from_int(2) / (q * q - F.one))


def family_6_2_2(q, g: QMetric, r_choice: int, n_plus, field: Field = QRAT) -> QSU2Connection:
    """Member of the metric, torsion-compatible, star-compatible moduli with parameter n+ and r index 0 or 1."""
    F = field
    q = F.coerce(QRatFn.q() if q is None else q)
    _check_q(F, q)
    gpp, g00, gmm = g.coerce(F)
    one = F.one
    n_plus = F.coerce(n_plus)
    if F.is_zero(n_plus):
        raise DegenerateN("n+ = 0 leaves m- undefined")
    yp = one + (one - q ** 2) * n_plus
    if F.is_zero(yp):
        raise DegenerateN("1 + (1 - q^2) n+ = 0 leaves n- undefined")
    n_minus = -n_plus / yp
    m_plus = q ** 4 * n_plus - (one + q ** 2)
    m_minus = m_plus * n_minus / (q ** 4 * n_plus)
    nu = q * gmm * m_minus / g00
    mu = m_plus * gpp / (q * g00)
    r = r_choices(F, q)[r_choice]
    return QSU2Connection(n_plus, n_minus, m_plus, m_minus, r, nu, mu, q, F)


def braided_points(q=None, field: Field = QRAT) -> list[QSU2Connection]:
    F = field
    q = F.coerce(QRatFn.q() if q is None else q)
    _check_q(F, q)
    one = F.one
    n_plus = (one + q ** 2) / q ** 4
    n_minus = -(one + q ** 2)
    return [QSU2Connection(n_plus, n_minus, F.zero, F.zero, r, F.zero, F.zero, q, F) for r in r_choices(F, q)]


def star_preserving_points(q, g: QMetric, field: Field = QRAT) -> list[QSU2Connection]:
    F = field
    q = F.coerce(QRatFn.q() if q is None else q)
    _check_q(F, q)
    gpp, g00, gmm = g.coerce(F)
    one = F.one
    o = one - q ** 2
    n_plus = (gmm / (q ** 4 * gpp) - one) / o
    n_minus = -(q ** 4) * n_plus * gpp / gmm
    m_plus = (gmm / gpp - one) / o
    m_minus = -m_plus * gpp / gmm
    nu = -q * m_plus * gpp / g00
    mu = m_plus * gpp / (q * g00)
    return [QSU2Connection(n_plus, n_minus, m_plus, m_minus, r, nu, mu, q, F) for r in r_choices(F, q)]


def _same(a: QSU2Connection, b: QSU2Connection) -> bool:
    F = a.field
    return all(F.eq(getattr(a, k), getattr(b, k)) for k in PARAMS)


def special_points(q, g: QMetric, field: Field = QRAT) -> dict:
    """Both braided points and both star-preserving points, each with certified flags."""
    out = {"q": field.format(field.coerce(QRatFn.q() if q is None else q)), "metric": g.to_json(),
           "braided_points": [], "star_preserving_points": []}
    bps = braided_points(q, field)
    for conn in bps:
        pr = flags(conn, g)
        out["braided_points"].append({
            "params": conn.format(),
            "flags": pr,
            "t0": field.format(torsion_q(conn)[1]),
            "table": braided_point_table_check(conn),
        })
    sps = star_preserving_points(q, g, field)
    for conn in sps:
        out["star_preserving_points"].append({"params": conn.format(), "flags": flags(conn, g)})
    gpp, _, gmm = g.coerce(field)
    if field.eq(gpp, gmm):
        out["coincide_at_r0"] = _same(sps[0], bps[0])
    return out


def classical_probe(g: QMetric, delta: float = 1e-3) -> dict:
    """n+ of the r = 0 star-preserving point just above and below q = 1."""
    F = cdouble_field(1e-9)
    vals = {}
    for q in (1 - delta, 1 + delta):
        vals[q] = star_preserving_points(q, g, F)[0].n_plus
    lo, hi = vals[1 - delta], vals[1 + delta]
    return {"n_plus_below": lo.real, "n_plus_above": hi.real, "bounded": abs(hi - lo) < 1e-1}


# ---------------------------------------------------------------------------
# Levi-Civita solver
# ---------------------------------------------------------------------------


def _lc_quadratic(q: float, g: tuple) -> tuple[float, float]:
    """``(B, disc)`` for the torsion-free condition as a quadratic in ``Y = 1 + n+(1 - q^2)``."""
    gpp, g00, gmm = g
    B = gmm - gpp + q * q * (1 - q * q) * g00
    return B, B * B + 4 * gpp * gmm


def _n_plus_root(q: float, g: tuple, sign: int) -> float:
    """Root ``Y = -(B + sign sqrt(disc)) / (2 A)`` of ``A Y^2 + B Y - g--/q^4``, mapped back to n+.

    The smaller root comes from the product of roots to avoid cancellation.
    """
    gpp, _, gmm = g
    B, disc = _lc_quadratic(q, g)
    A = q ** 4 * gpp
    root = math.sqrt(disc)
    big = -(B + math.copysign(root, B)) / (2 * A)
    Y = big if (sign > 0) == (B >= 0) else -gmm / (q ** 4 * A * big)
    return (Y - 1) / (1 - q * q)


def _classical_sign(g: tuple, delta: float = 1e-3) -> int:
    """The root whose n+ stays bounded across q = 1 (two-point probe)."""
    best, best_jump = None, None
    for sign in (-1, 1):
        jump = abs(_n_plus_root(1 + delta, g, sign) - _n_plus_root(1 - delta, g, sign))
        if best_jump is None or jump < best_jump:
            best, best_jump = sign, jump
    return best


def _maxabs(xs) -> float:
    return max((abs(complex(x)) for x in xs), default=0.0)


def _num(x) -> float | list:
    z = complex(x)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return float(f"{z.real:.15g}")
    return [float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")]


def levi_civita_solve(q: float, g: QMetric, tol: float = 1e-9) -> dict:
    """The four torsion-free members of the metric, star-compatible moduli."""
    q = float(q)
    if q <= 0 or abs(q * q - 1) < 1e-12:
        raise BadQ("q must be positive with q^2 != 1")
    gv = tuple(float(complex(x).real) for x in (g.gpp, g.g00, g.gmm))
    F = cdouble_field(tol)
    B, disc = _lc_quadratic(q, gv)
    if not disc > 0:
        raise NonPositiveDisc(f"discriminant {disc} is not positive")
    csign = _classical_sign(gv)
    sols = []
    classical = None
    for ri in (0, 1):
        for sign in (-1, 1):
            n_plus = _n_plus_root(q, gv, sign)
            conn = family_6_2_2(q, g, ri, n_plus, F)
            # residuals relative to the parameter size: near Y = 0 the
            # parameters grow large and absolute rounding grows with them
            scale = max(1.0, _maxabs(conn.params().values()))
            res = {
                "torsion": _maxabs(torsion_q(conn)) / scale,
                "metric": _maxabs(metric_defect(conn, g)) / scale,
                "star": _maxabs(star_compat_defect(conn)) / scale,
                "torsion_compatible": _maxabs(torsion_compat_defect(conn)) / scale,
            }
            rec = {
                "r": _num(conn.r),
                "sign": "-" if sign < 0 else "+",
                "n_plus": _num(conn.n_plus),
                "n_minus": _num(conn.n_minus),
                "m_plus": _num(conn.m_plus),
                "m_minus": _num(conn.m_minus),
                "nu": _num(conn.nu),
                "mu": _num(conn.mu),
                "residuals": {k: float(f"{v:.3e}") for k, v in res.items()},
                "scale": float(f"{scale:.6g}"),
                "ok": all(v < tol for v in res.values()),
            }
            if ri == 0 and sign == csign:
                classical = len(sols)
            sols.append(rec)
    return {
        "q": q,
        "metric": list(gv),
        "disc": float(f"{disc:.15g}"),
        "solutions": sols,
        "classical_root_index": classical,
        "classical_sign": "-" if csign < 0 else "+",
        "ok": all(s["ok"] for s in sols),
    }


# ---------------------------------------------------------------------------
# q = 1
# ---------------------------------------------------------------------------


def _classical_system(g: QMetric):
    """Real-linear system at q = 1 in (Re, Im) of the seven parameters.

    Unknown order: Re/Im of n+, n-, m+, m-, r, nu, mu.  Rows encode vanishing
    torsion, metric preservation and star preservation.
    """
    gpp, g00, gmm = (GaussRat.coerce(x) for x in g.coerce(GAUSS))
    if not all(x.is_real() for x in (gpp, g00, gmm)):
        raise BadMetric("metric entries must be real")
    gpp, g00, gmm = gpp.re, g00.re, gmm.re
    col = {name: 2 * k for k, name in enumerate(PARAMS)}
    rows, rhs = [], []

    def eq(terms: dict, value=0):
        row = [0] * 14
        for (name, part), c in terms.items():
            row[col[name] + part] += c
        rows.append(row)
        rhs.append(value)

    RE, IM = 0, 1
    # torsion: m+ - n+ + 2 = 0, m- - n- - 2 = 0, nu - mu - 1 = 0
    for part in (RE, IM):
        eq({("m_plus", part): 1, ("n_plus", part): -1}, -2 if part == RE else 0)
        eq({("m_minus", part): 1, ("n_minus", part): -1}, 2 if part == RE else 0)
        eq({("nu", part): 1, ("mu", part): -1}, 1 if part == RE else 0)
    # metric: n+-, r real; g++ conj(m+) = g00 mu; g00 conj(nu) = g-- m-
    for name in ("n_plus", "n_minus", "r"):
        eq({(name, IM): 1})
    eq({("m_plus", RE): gpp, ("mu", RE): -g00})
    eq({("m_plus", IM): -gpp, ("mu", IM): -g00})
    eq({("nu", RE): g00, ("m_minus", RE): -gmm})
    eq({("nu", IM): -g00, ("m_minus", IM): -gmm})
    # star preserving: r imaginary, conj(n+) = -n-, conj(m+) = -m-, conj(mu) = -nu
    eq({("r", RE): 1})
    for a, b in (("n_plus", "n_minus"), ("m_plus", "m_minus"), ("mu", "nu")):
        eq({(a, RE): 1, (b, RE): 1})
        eq({(a, IM): -1, (b, IM): 1})
    A = Mat(len(rows), 14, [GAUSS.coerce(x) for row in rows for x in row], GAUSS)
    return A, [GAUSS.coerce(x) for x in rhs]


def gamma_star_defect(conn: QSU2Connection) -> list:
    """``Gamma[i][k]* = Gamma[phi(i)][phi(k)]`` as 1-forms (the q = 1 star-preserving test)."""
    F = conn.field
    Gam = christoffel_forms(conn)
    out = []
    for i, k in itertools.product(range(3), repeat=2):
        out.extend(_form_diff(F, _star_const_form(conn, Gam[i][k]), Gam[PHI[i]][PHI[k]]))
    return out


def classical_limit_check(g: QMetric) -> dict:
    """Exact solution of the q = 1 torsion-free, metric, star-preserving system."""
    A, b = _classical_system(g)
    sol = solve_affine(A, b)
    out = {"metric": g.to_json(), "solution": None, "unique": None}
    if sol is None:
        out["exists"] = False
        return out
    out["exists"] = True
    out["unique"] = len(kernel_basis(A)) == 0
    vals = {name: GaussRat(sol[2 * k].re, sol[2 * k + 1].re) for k, name in enumerate(PARAMS)}
    conn = QSU2Connection.make(q=1, field=GAUSS, **vals)
    out["solution"] = conn.format()
    gpp, g00, _ = (GAUSS.coerce(x) for x in g.coerce(GAUSS))
    expected = {
        "nu": GaussRat(1, 0) / 2, "mu": GaussRat(-1, 0) / 2,
        "m_minus": g00 / (2 * gpp), "m_plus": -g00 / (2 * gpp),
        "n_plus": 2 - g00 / (2 * gpp), "n_minus": g00 / (2 * gpp) - 2, "r": GaussRat(0),
    }
    out["matches_closed_form"] = all(vals[k] == v for k, v in expected.items())
    out["torsion_free"] = all(GAUSS.is_zero(x) for x in torsion_q(conn))
    out["metric_preserving"] = all(GAUSS.is_zero(x) for x in metric_defect(conn, g))
    out["star_compatible"] = all(GAUSS.is_zero(x) for x in star_compat_defect(conn))
    out["star_preserving"] = out["star_compatible"] and all(
        GAUSS.is_zero(x) for x in star_preserving_extra_defect(conn))
    out["gamma_star_condition"] = all(GAUSS.is_zero(x) for x in gamma_star_defect(conn))
    out["sigma_is_flip"] = all(
        sigma9(conn)[_idx(j, i), _idx(i, j)] == GaussRat(1) for i in range(3) for j in range(3))
    return out


# ---------------------------------------------------------------------------
# sphere descent
# ---------------------------------------------------------------------------


def sphere_descent_check() -> dict:
    """Values of n+- forced by keeping invariant horizontal forms horizontal under nabla.

    For ``u e^s`` invariant (coaction weight of u cancels that of e^s), the
    e0 (x) e^s part of ``nabla(u e^s) = du (x) e^s + u nabla(e^s)`` is
    ``(lambda + n_s) u`` where ``lambda u`` is the e0 coefficient of du.
    """
    q = QRatFn.q()
    rows = []
    found: dict[str, set] = {"+": set(), "-": set()}
    for name, u, _expected in qalg.sphere_derivatives():
        m = next(iter(u.terms))
        w = qalg._weight(m)
        side = "+" if w == -2 else "-" if w == 2 else None
        e0 = qalg.d_alg(u).comps[qalg.ZERO]
        lam = e0.terms[m] / u.terms[m]
        proportional = e0 == u.scale(lam)
        rows.append({"u": name, "form": f"u e{side}", "lambda": QRAT.format(lam),
                     "proportional": proportional, "n": QRAT.format(-lam)})
        if side:
            found[side].add(-lam)
    target = braided_points(None, QRAT)[0]
    ok = (all(r["proportional"] for r in rows) and len(found["+"]) == 1 and len(found["-"]) == 1
          and next(iter(found["+"])) == target.n_plus and next(iter(found["-"])) == target.n_minus)
    return {
        "rows": rows,
        "n_plus": QRAT.format(next(iter(found["+"]))) if len(found["+"]) == 1 else None,
        "n_minus": QRAT.format(next(iter(found["-"]))) if len(found["-"]) == 1 else None,
        "matches_braided_point": ok,
        "q": QRAT.format(q),
    }
