"""Normal-form engine for C_q[SL2] (and C_q[SU2] with its star) plus the 3D calculus.

Elements are combinations of PBW monomials ``a^i b^j c^k d^l`` with ``i*l == 0``,
keyed by the tuple ``(i, j, k, l)`` and carrying ``QRatFn`` coefficients.  The
single rewrite ``ad -> 1 + q^-1 bc`` together with the q-commutations gives a
unique normal form, so identities are checked by comparing normal forms.

One-forms are kept in left-module normal form ``x+ e+ + x0 e0 + x- e-`` and
two-forms over the ordered basis ``e+^e-, e+^e0, e-^e0``.
"""
from __future__ import annotations

import functools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalars import QRAT, ParseError, QRatFn, _Parser

__all__ = [
    "QPoly",
    "QTensor",
    "QForm1",
    "QForm2",
    "GENS",
    "PLUS",
    "ZERO",
    "MINUS",
    "DegreeCapExceeded",
    "gen",
    "normalize",
    "multiply",
    "coproduct",
    "counit",
    "antipode",
    "star_alg",
    "d_alg",
    "d_word",
    "d_form",
    "wedge",
    "basis_form",
    "x_dy",
    "star_x_dy",
    "star_form",
    "basis_from_definition",
    "RELATIONS",
    "random_element",
    "random_monomial",
    "format_qpoly",
    "verify_3d_calculus",
]

GENS = "abcd"
PLUS, ZERO, MINUS = 0, 1, 2  # component order (+, 0, -)
LABELS1 = ("e+", "e0", "e-")
LABELS2 = ("e+^e-", "e+^e0", "e-^e0")

Mono = tuple  # (i, j, k, l)
ONE_MONO: Mono = (0, 0, 0, 0)
_GEN_MONO = {"a": (1, 0, 0, 0), "b": (0, 1, 0, 0), "c": (0, 0, 1, 0), "d": (0, 0, 0, 1)}


class DegreeCapExceeded(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def qp(n: int) -> QRatFn:
    """``q^n`` as a cached rational function."""
    return QRatFn.q() ** n


_ONE = QRatFn.const(1)
_ZERO = QRatFn.const(0)


def _add_into(acc: dict, key, coef) -> None:
    v = acc.get(key)
    v = coef if v is None else v + coef
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# ---------------------------------------------------------------------------
# monomial products
# ---------------------------------------------------------------------------


def _rmul_gen(m: Mono, g: str) -> list[tuple[Mono, int]]:
    """``m * g`` as a list of ``(monomial, q-exponent)`` terms (all coefficients are powers of q)."""
    i, j, k, l = m
    if g == "a":
        if l == 0:
            return [((i + 1, j, k, 0), j + k)]
        # d a = 1 + q bc and d^(l-1) bc = q^(2l-2) bc d^(l-1)
        return [((0, j, k, l - 1), 0), ((0, j + 1, k + 1, l - 1), 2 * l - 1)]
    if g == "b":
        return [((i, j + 1, k, l), l)]
    if g == "c":
        return [((i, j, k + 1, l), l)]
    if g == "d":
        if i == 0:
            return [((0, j, k, l + 1), 0)]
        # b d = q^-1 d b, c d = q^-1 d c, a d = 1 + q^-1 bc
        return [((i - 1, j, k, 0), -(j + k)), ((i - 1, j + 1, k + 1, 0), -(j + k) - 1)]
    raise ValueError(f"unknown generator {g!r}")


def _word(m: Mono) -> str:
    i, j, k, l = m
    return "a" * i + "b" * j + "c" * k + "d" * l


@functools.lru_cache(maxsize=65536)
def _mono_mul(m1: Mono, m2: Mono) -> tuple:
    cur: dict[Mono, dict[int, int]] = {m1: {0: 1}}
    for g in _word(m2):
        nxt: dict[Mono, dict[int, int]] = {}
        for m, lau in cur.items():
            for m_new, e in _rmul_gen(m, g):
                slot = nxt.setdefault(m_new, {})
                for ex, c in lau.items():
                    slot[ex + e] = slot.get(ex + e, 0) + c
        cur = nxt
    out = []
    for m, lau in cur.items():
        coef = _ZERO
        for ex, c in lau.items():
            if c:
                coef = coef + qp(ex) * c
        if coef:
            out.append((m, coef))
    return tuple(out)


# ---------------------------------------------------------------------------
# QPoly
# ---------------------------------------------------------------------------


class QPoly:
    """Element of C_q[SL2] in PBW normal form."""

    __slots__ = ("terms",)
    __hash__ = None  # mutable-looking container; compare by value

    def __init__(self, terms: dict | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = QRAT.coerce(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "QPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, c) -> "QPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def one(cls) -> "QPoly":
        return cls.scalar(1)

    @classmethod
    def zero(cls) -> "QPoly":
        return cls._raw({})

    @classmethod
    def mono(cls, m: Mono, coef=1) -> "QPoly":
        return cls({m: coef})

    @classmethod
    def coerce(cls, x) -> "QPoly":
        if isinstance(x, QPoly):
            return x
        if isinstance(x, str) and x in _GEN_MONO:
            return gen(x)
        return cls.scalar(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = QPoly.coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return QPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-QPoly.coerce(other))

    def __rsub__(self, other):
        return QPoly.coerce(other) - self

    def scale(self, c) -> "QPoly":
        c = QRAT.coerce(c)
        if not c:
            return QPoly.zero()
        return QPoly._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            if isinstance(other, str):
                other = gen(other)
            else:
                return self.scale(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, c in _mono_mul(m1, m2):
                    _add_into(acc, m, c12 * c)
        return QPoly._raw(acc)

    def __rmul__(self, other):
        return QPoly.coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, QPoly):
            if not other.is_scalar() or other.is_zero():
                raise ZeroDivisionError("can only divide by a nonzero scalar")
            other = other.scalar_part()
        return self.scale(QRAT.coerce(1) / QRAT.coerce(other))

    def __pow__(self, n: int):
        if n < 0:
            if self.is_scalar() and not self.is_zero():
                return QPoly.scalar(self.scalar_part() ** n)
            raise ValueError("negative powers are only defined for nonzero scalars")
        out = QPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            try:
                other = QPoly.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    def scalar_part(self) -> QRatFn:
        return self.terms.get(ONE_MONO, _ZERO)

    def coeff(self, m: Mono) -> QRatFn:
        return self.terms.get(tuple(m), _ZERO)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def map_coeffs(self, f) -> "QPoly":
        return QPoly({m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"QPoly({self})"

    def __str__(self):
        return format_qpoly(self)

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        return _QPolyParser(text).parse()


def gen(name: str) -> QPoly:
    return QPoly._raw({_GEN_MONO[name]: _ONE})


def _sort_key(m: Mono):
    return (sum(m), m)


def _format_mono(m: Mono) -> str:
    parts = []
    for g, e in zip(GENS, m):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


def _q_monomial(c: QRatFn):
    """``(g, n)`` when ``c = g * q^n`` with g a constant, else ``None``."""
    num = [k for k, v in enumerate(c.num) if v]
    den = [k for k, v in enumerate(c.den) if v]
    if len(num) != 1 or len(den) != 1:
        return None
    return c.num[num[0]] / c.den[den[0]], num[0] - den[0]


def _format_coeff(c: QRatFn) -> str:
    mono = _q_monomial(c)
    if mono is None or mono[1] == 0:
        return QRAT.format(c)
    g, n = mono
    qs = "q" if n == 1 else f"q^{n}"
    gs = QRAT.format(QRatFn.const(g))
    if gs == "1":
        return qs
    if gs == "-1":
        return "-" + qs
    if any(ch in gs.lstrip("-") for ch in "+-/"):
        gs = f"({gs})"
    return f"{gs}*{qs}"


def format_qpoly(x: QPoly) -> str:
    if x.is_zero():
        return "0"
    out = []
    for m in sorted(x.terms, key=_sort_key, reverse=True):
        c = x.terms[m]
        cs = _format_coeff(c)
        mono = _format_mono(m)
        simple = _q_monomial(c) is not None
        neg = False
        if cs.startswith("-") and (simple or not any(ch in cs[1:] for ch in "+-")):
            neg, cs = True, cs[1:]
        if not mono:
            term = cs
        elif cs == "1":
            term = mono
        else:
            if not simple and (any(ch in cs for ch in "+-") or "/" in cs):
                cs = f"({cs})"
            term = f"{cs}*{mono}"
        out.append(("-" if neg else "+", term))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, term in out[1:]:
        s += f" {sign} {term}"
    return s


_QTOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+|\d+)"
    r"|(?P<id>[iqabcd])|(?P<op>[-+*/^()]))"
)


class _QAdapter:
    """Field-like shim so the scalar parser builds QPoly values."""

    def from_decimal(self, text):
        return QPoly.scalar(QRAT.from_decimal(text))

    def i(self):
        return QPoly.scalar(QRAT.i())

    def q(self):
        return QPoly.scalar(QRAT.q())

    def is_zero(self, x):
        return x.is_zero()


class _QPolyParser(_Parser):
    pattern = _QTOKEN

    def __init__(self, text: str):
        super().__init__(text, _QAdapter())

    def atom(self):
        kind, val = self.peek()
        if kind == "id" and val in GENS:
            self.take()
            return gen(val)
        return super().atom()

    def power(self):
        try:
            return super().power()
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from exc


def normalize(word: Iterable) -> QPoly:
    """Product of a word of generators (``"a"``..``"d"``), scalars or QPolys, in order."""
    out = QPoly.one()
    for w in word:
        out = out * QPoly.coerce(w)
    return out


def multiply(x: QPoly, y: QPoly) -> QPoly:
    return x * y


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


class QTensor:
    """Element of A (x) A as a combination of pairs of PBW monomials."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return QTensor(acc)

    def __mul__(self, other):
        acc: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for ma, ca in _mono_mul(a1, a2):
                    for mb, cb in _mono_mul(b1, b2):
                        _add_into(acc, (ma, mb), c12 * ca * cb)
        return QTensor(acc)

    def __eq__(self, other):
        return isinstance(other, QTensor) and self.terms == other.terms

    @classmethod
    def one(cls) -> "QTensor":
        return cls({(ONE_MONO, ONE_MONO): _ONE})

    @classmethod
    def pure(cls, x: QPoly, y: QPoly) -> "QTensor":
        acc: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                _add_into(acc, (m1, m2), c1 * c2)
        return cls(acc)

    def legs(self) -> list[tuple[QPoly, QPoly, QRatFn]]:
        return [(QPoly.mono(a), QPoly.mono(b), c) for (a, b), c in self.terms.items()]


_DELTA = {
    "a": (("a", "a"), ("b", "c")),
    "b": (("a", "b"), ("b", "d")),
    "c": (("c", "a"), ("d", "c")),
    "d": (("c", "b"), ("d", "d")),
}


@functools.lru_cache(maxsize=None)
def _delta_gen(g: str) -> QTensor:
    out = QTensor()
    for x, y in _DELTA[g]:
        out = out + QTensor.pure(gen(x), gen(y))
    return out


def coproduct(x: QPoly, degree_cap: int = 8) -> QTensor:
    if x.degree() > degree_cap:
        raise DegreeCapExceeded(f"degree {x.degree()} exceeds cap {degree_cap}")
    total = QTensor()
    for m, c in x.terms.items():
        t = QTensor.one()
        for g in _word(m):
            t = t * _delta_gen(g)
        total = total + QTensor({k: v * c for k, v in t.terms.items()})
    return total


def counit(x: QPoly) -> QRatFn:
    out = _ZERO
    for (i, j, k, l), c in x.terms.items():
        if j == 0 and k == 0:
            out = out + c
    return out


def _anti_hom(x: QPoly, images: dict, conj: bool = False) -> QPoly:
    out = QPoly.zero()
    for m, c in x.terms.items():
        t = QPoly.scalar(c.conjugate() if conj else c)
        for g in reversed(_word(m)):
            t = t * images[g]
        out = out + t
    return out


@functools.lru_cache(maxsize=None)
def _s_images(inverse: bool) -> dict:
    q = QRAT.q()
    if inverse:
        return {"a": gen("d"), "b": gen("b").scale(-1 / q), "c": gen("c").scale(-q), "d": gen("a")}
    return {"a": gen("d"), "b": gen("b").scale(-q), "c": gen("c").scale(-1 / q), "d": gen("a")}


def antipode(x: QPoly, inverse: bool = False) -> QPoly:
    """``S`` (or ``S^-1``), extended antimultiplicatively."""
    return _anti_hom(x, _s_images(inverse))


@functools.lru_cache(maxsize=None)
def _star_images() -> dict:
    q = QRAT.q()
    return {"a": gen("d"), "b": gen("c").scale(-1 / q), "c": gen("b").scale(-q), "d": gen("a")}


def star_alg(x: QPoly) -> QPoly:
    """Antilinear antimultiplicative involution with ``a* = d``, ``c* = -q b`` (q real)."""
    return _anti_hom(x, _star_images(), conj=True)


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


def _weight(m: Mono) -> int:
    i, j, k, l = m
    return (i + k) - (j + l)


_FORM_FACTOR1 = (1, 2, 1)  # e+ and e- move past a with a factor q, e0 with q^2
_FORM_FACTOR2 = (2, 3, 3)  # the two-form basis elements combine the factors


def _twist(x: QPoly, factor: int) -> QPoly:
    """``x`` with each monomial m scaled by ``q^(factor * weight(m))``: ``e x = twist(x) e``."""
    if factor == 0:
        return x
    return QPoly._raw({m: c * qp(factor * _weight(m)) for m, c in x.terms.items()})


@dataclass(frozen=True)
class QForm1:
    comps: tuple  # (x+, x0, x-)

    @classmethod
    def zero(cls) -> "QForm1":
        z = QPoly.zero()
        return cls((z, z, z))

    @classmethod
    def of(cls, plus=0, zero=0, minus=0) -> "QForm1":
        return cls(tuple(QPoly.coerce(x) for x in (plus, zero, minus)))

    def __add__(self, other: "QForm1") -> "QForm1":
        return QForm1(tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other: "QForm1") -> "QForm1":
        return QForm1(tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self) -> "QForm1":
        return QForm1(tuple(-x for x in self.comps))

    def scale(self, c) -> "QForm1":
        return QForm1(tuple(x.scale(c) for x in self.comps))

    def lmul(self, x) -> "QForm1":
        x = QPoly.coerce(x)
        return QForm1(tuple(x * y for y in self.comps))

    def rmul(self, x) -> "QForm1":
        x = QPoly.coerce(x)
        return QForm1(tuple(y * _twist(x, f) for y, f in zip(self.comps, _FORM_FACTOR1)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def __eq__(self, other):
        return isinstance(other, QForm1) and self.comps == other.comps

    __hash__ = None

    def to_json(self) -> dict:
        return {lab: str(x) for lab, x in zip(LABELS1, self.comps)}

    def __str__(self):
        parts = [f"({x}) {lab}" for x, lab in zip(self.comps, LABELS1) if not x.is_zero()]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QForm2:
    comps: tuple  # over (e+^e-, e+^e0, e-^e0)

    @classmethod
    def zero(cls) -> "QForm2":
        z = QPoly.zero()
        return cls((z, z, z))

    @classmethod
    def of(cls, pm=0, p0=0, m0=0) -> "QForm2":
        return cls(tuple(QPoly.coerce(x) for x in (pm, p0, m0)))

    def __add__(self, other: "QForm2") -> "QForm2":
        return QForm2(tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other: "QForm2") -> "QForm2":
        return QForm2(tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self) -> "QForm2":
        return QForm2(tuple(-x for x in self.comps))

    def scale(self, c) -> "QForm2":
        return QForm2(tuple(x.scale(c) for x in self.comps))

    def lmul(self, x) -> "QForm2":
        x = QPoly.coerce(x)
        return QForm2(tuple(x * y for y in self.comps))

    def rmul(self, x) -> "QForm2":
        x = QPoly.coerce(x)
        return QForm2(tuple(y * _twist(x, f) for y, f in zip(self.comps, _FORM_FACTOR2)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def __eq__(self, other):
        return isinstance(other, QForm2) and self.comps == other.comps

    __hash__ = None

    def to_json(self) -> dict:
        return {lab: str(x) for lab, x in zip(LABELS2, self.comps)}

    def __str__(self):
        parts = [f"({x}) {lab}" for x, lab in zip(self.comps, LABELS2) if not x.is_zero()]
        return " + ".join(parts) if parts else "0"


def basis_form(s: int) -> QForm1:
    comps = [QPoly.zero()] * 3
    comps[s] = QPoly.one()
    return QForm1(tuple(comps))


@functools.lru_cache(maxsize=None)
def wedge_basis(s: int, t: int) -> tuple[int, QRatFn] | None:
    """``e^s ^ e^t`` as ``(basis index, coefficient)``; ``None`` when it vanishes."""
    q = QRAT.q()
    table = {
        (PLUS, MINUS): (0, _ONE),
        (MINUS, PLUS): (0, -q ** 2),
        (PLUS, ZERO): (1, _ONE),
        (ZERO, PLUS): (1, -q ** 4),
        (MINUS, ZERO): (2, _ONE),
        (ZERO, MINUS): (2, -q ** -4),
    }
    return table.get((s, t))


def wedge(alpha: QForm1, beta: QForm1) -> QForm2:
    comps = [QPoly.zero()] * 3
    for s in range(3):
        x = alpha.comps[s]
        if x.is_zero():
            continue
        for t in range(3):
            y = beta.comps[t]
            wb = wedge_basis(s, t)
            if y.is_zero() or wb is None:
                continue
            k, c = wb
            comps[k] = comps[k] + (x * _twist(y, _FORM_FACTOR1[s])).scale(c)
    return QForm2(tuple(comps))


@functools.lru_cache(maxsize=None)
def _d_gen(g: str) -> QForm1:
    q = QRAT.q()
    a, b, c, d = (gen(x) for x in GENS)
    table = {
        "a": QForm1.of(b.scale(q), a, 0),
        "b": QForm1.of(0, b.scale(-q ** -2), a),
        "c": QForm1.of(d.scale(q), c, 0),
        "d": QForm1.of(0, d.scale(-q ** -2), c),
    }
    return table[g]


def d_word(word: Sequence) -> QForm1:
    """Leibniz rule applied to an unnormalized word of generators and scalars."""
    word = [QPoly.coerce(w) if not (isinstance(w, str) and w in GENS) else w for w in word]
    out = QForm1.zero()
    for t, w in enumerate(word):
        if not isinstance(w, str):
            continue  # scalars have zero derivative
        left = normalize(word[:t])
        right = normalize(word[t + 1:])
        out = out + _d_gen(w).lmul(left).rmul(right)
    return out


@functools.lru_cache(maxsize=4096)
def _d_mono(m: Mono) -> QForm1:
    return d_word(list(_word(m)))


def d_alg(x: QPoly) -> QForm1:
    out = QForm1.zero()
    for m, c in x.terms.items():
        if m != ONE_MONO:
            out = out + _d_mono(m).scale(c)
    return out


@functools.lru_cache(maxsize=None)
def _d_basis(s: int) -> QForm2:
    q = QRAT.q()
    two = 1 + q ** -2
    if s == ZERO:
        return QForm2.of(QPoly.scalar(q ** 3), 0, 0)
    if s == PLUS:
        return QForm2.of(0, QPoly.scalar(-(q ** 2) * two), 0)
    return QForm2.of(0, 0, QPoly.scalar(q ** -2 * two))


def d_form(alpha: QForm1) -> QForm2:
    """``d(sum x_s e^s) = sum dx_s ^ e^s + x_s de^s``."""
    out = QForm2.zero()
    for s, x in enumerate(alpha.comps):
        if x.is_zero():
            continue
        out = out + wedge(d_alg(x), basis_form(s)) + _d_basis(s).lmul(x)
    return out


def x_dy(x, y) -> QForm1:
    """The one-form ``x.dy``."""
    return d_alg(QPoly.coerce(y)).lmul(x)


def dy_x(y, x) -> QForm1:
    """The one-form ``dy.x``."""
    return d_alg(QPoly.coerce(y)).rmul(x)


def star_x_dy(x, y) -> QForm1:
    """``(x.dy)* = d(y*).x*``."""
    return dy_x(star_alg(QPoly.coerce(y)), star_alg(QPoly.coerce(x)))


# the basis one-forms as x.dy expressions: list of (coefficient, x, y)
def basis_definitions() -> dict[int, list]:
    q = QRAT.q()
    a, b, c, d = (gen(x) for x in GENS)
    return {
        MINUS: [(_ONE, d, b), (-q, b, d)],
        PLUS: [(1 / q, a, c), (-(q ** -2), c, a)],
        ZERO: [(_ONE, d, a), (-q, b, c)],
    }


def basis_from_definition(s: int) -> QForm1:
    out = QForm1.zero()
    for coef, x, y in basis_definitions()[s]:
        out = out + x_dy(x, y).scale(coef)
    return out


def star_basis_from_definition(s: int) -> QForm1:
    out = QForm1.zero()
    for coef, x, y in basis_definitions()[s]:
        out = out + star_x_dy(x, y).scale(coef.conjugate())
    return out


def d_basis_from_definition(s: int) -> QForm2:
    """``d(x.dy) = dx ^ dy`` summed over the defining expression."""
    out = QForm2.zero()
    for coef, x, y in basis_definitions()[s]:
        out = out + wedge(d_alg(x), d_alg(y)).scale(coef)
    return out


@functools.lru_cache(maxsize=None)
def _star_basis_table() -> tuple:
    q = QRAT.q()
    return (
        QForm1.of(0, 0, QPoly.scalar(-1 / q)),  # e+* = -q^-1 e-
        QForm1.of(0, -1, 0),  # e0* = -e0
        QForm1.of(QPoly.scalar(-q), 0, 0),  # e-* = -q e+
    )


def star_form(alpha: QForm1) -> QForm1:
    """``(x e^s)* = (e^s)* x*``."""
    out = QForm1.zero()
    for s, x in enumerate(alpha.comps):
        if not x.is_zero():
            out = out + _star_basis_table()[s].rmul(star_alg(x))
    return out


# ---------------------------------------------------------------------------
# relations and random elements
# ---------------------------------------------------------------------------


def _rel(q):
    return {
        "ba = q ab": (["b", "a"], [q, "a", "b"]),
        "ca = q ac": (["c", "a"], [q, "a", "c"]),
        "db = q bd": (["d", "b"], [q, "b", "d"]),
        "dc = q cd": (["d", "c"], [q, "c", "d"]),
        "cb = bc": (["c", "b"], ["b", "c"]),
    }


RELATIONS = ("ba = q ab", "ca = q ac", "db = q bd", "dc = q cd", "cb = bc",
             "da - ad = (q - q^-1) bc", "ad - q^-1 bc = 1")


def relation_sides() -> dict[str, tuple[list[list], list[list]]]:
    """Each relation as two sums of words ``[(coef, word), ...]``."""
    q = QRAT.q()
    out = {}
    for name, (lhs, rhs) in _rel(q).items():
        lc = [(_ONE, lhs)]
        rc = [(rhs[0], rhs[1:])] if not isinstance(rhs[0], str) else [(_ONE, rhs)]
        out[name] = (lc, rc)
    out["da - ad = (q - q^-1) bc"] = ([(_ONE, ["d", "a"]), (-_ONE, ["a", "d"])], [(q - 1 / q, ["b", "c"])])
    out["ad - q^-1 bc = 1"] = ([(_ONE, ["a", "d"]), (-1 / q, ["b", "c"])], [(_ONE, [])])
    return out


def _sum_words(terms, fn):
    out = None
    for coef, w in terms:
        v = fn(w).scale(coef)
        out = v if out is None else out + v
    return out


def random_monomial(rng: random.Random, max_degree: int = 4) -> QPoly:
    deg = rng.randint(0, max_degree)
    return normalize([rng.choice(GENS) for _ in range(deg)])


def random_element(rng: random.Random, max_degree: int = 3, terms: int = 3) -> QPoly:
    out = QPoly.zero()
    for _ in range(terms):
        c = qp(rng.randint(-2, 2)) * rng.randint(-3, 3)
        out = out + random_monomial(rng, max_degree).scale(c)
    return out


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


def _check(name: str, lhs, rhs) -> dict:
    ok = lhs == rhs
    rec = {"name": name, "ok": bool(ok)}
    if not ok:
        rec["lhs"] = lhs.to_json() if hasattr(lhs, "to_json") else str(lhs)
        rec["rhs"] = rhs.to_json() if hasattr(rhs, "to_json") else str(rhs)
    return rec


def eq24_lhs(g: str) -> QForm1:
    """``d x_(2) . S^-1(x_(1))`` for a generator x."""
    out = QForm1.zero()
    for x1, x2, c in coproduct(gen(g)).legs():
        out = out + d_alg(x2).rmul(antipode(x1, inverse=True)).scale(c)
    return out


def sphere_derivatives() -> list[tuple[str, QPoly, QRatFn]]:
    """The six invariant-candidate products with their expected e0 coefficient factor."""
    q = QRAT.q()
    a, b, c, d = (gen(x) for x in GENS)
    up = 1 + q ** 2
    down = -(q ** -4) * (1 + q ** 2)
    return [("ac", a * c, up), ("a^2", a * a, up), ("c^2", c * c, up),
            ("d^2", d * d, down), ("b^2", b * b, down), ("bd", b * d, down)]


def verify_3d_calculus() -> dict:
    """Certify the calculus identities by normal-form comparison."""
    q = QRAT.q()
    checks = []
    a, b, c, d = (gen(x) for x in GENS)

    for name, (lhs, rhs) in relation_sides().items():
        checks.append(_check(f"relation {name}", _sum_words(lhs, normalize), _sum_words(rhs, normalize)))
        checks.append(_check(f"d of relation {name}", _sum_words(lhs, d_word), _sum_words(rhs, d_word)))

    for s, lab in enumerate(LABELS1):
        checks.append(_check(f"{lab} from its x.dy definition", basis_from_definition(s), basis_form(s)))

    expected24 = {
        "a": basis_form(ZERO).scale(q ** -2),
        "b": basis_form(MINUS).scale(1 / q),
        "c": basis_form(PLUS).scale(q ** 2),
        "d": basis_form(ZERO).scale(-1),
    }
    for g in GENS:
        checks.append(_check(f"d{g}_(2).S^-1({g}_(1))", eq24_lhs(g), expected24[g]))

    for s, lab in enumerate(LABELS1):
        checks.append(_check(f"{lab}* from the definition", star_basis_from_definition(s), _star_basis_table()[s]))

    for name, x, factor in sphere_derivatives():
        checks.append(_check(f"e0 coefficient of d({name})", d_alg(x).comps[ZERO], x.scale(factor)))

    for g in GENS:
        checks.append(_check(f"d^2 {g} = 0", d_form(d_alg(gen(g))), QForm2.zero()))
    for s, lab in enumerate(LABELS1):
        checks.append(_check(f"d{lab} from the definition", d_basis_from_definition(s), _d_basis(s)))

    one = QPoly.one()
    for g in GENS:
        t = coproduct(gen(g))
        lhs = sum((antipode(x1) * x2).scale(cc) for x1, x2, cc in t.legs()) or QPoly.zero()
        rhs = sum((x1 * antipode(x2)).scale(cc) for x1, x2, cc in t.legs()) or QPoly.zero()
        eps = one.scale(counit(gen(g)))
        checks.append(_check(f"S({g}_(1)){g}_(2) = eps", lhs, eps))
        checks.append(_check(f"{g}_(1)S({g}_(2)) = eps", rhs, eps))
        checks.append(_check(f"S^-1(S({g})) = {g}", antipode(antipode(gen(g)), inverse=True), gen(g)))
        checks.append(_check(f"({g}*)* = {g}", star_alg(star_alg(gen(g))), gen(g)))
        checks.append(_check(f"(S*)^2 {g} = {g}", antipode(star_alg(antipode(star_alg(gen(g))))), gen(g)))
    for g in GENS:
        for h in GENS:
            checks.append(_check(f"Delta({g}{h}) = Delta({g})Delta({h})", coproduct(gen(g) * gen(h)),
                                 _delta_gen(g) * _delta_gen(h)))
    return {"checks": checks, "ok": all(ch["ok"] for ch in checks), "count": len(checks)}
