"""Scalar fields shared by the whole package.

Three interchangeable backends sit behind one small field contract:

* ``GaussRat`` -- exact Gaussian rationals ``re + i*im`` with ``Fraction`` parts.
* ``QRatFn``   -- exact rational functions of a single *real* variable ``q``
  whose coefficients are Gaussian rationals.
* ``CDouble``  -- plain Python ``complex`` compared with a tolerance.

All values are immutable.  Arithmetic is done with the ordinary operators; the
``Field`` objects add the pieces that differ per backend (zero test, parsing,
formatting, embedding of integers).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussRat",
    "QRatFn",
    "CDouble",
    "Field",
    "GAUSS",
    "QRAT",
    "CDOUBLE",
    "cdouble_field",
    "field_by_name",
    "PoleAtPoint",
    "ParseError",
    "eval_q",
    "random_point",
    "qint",
    "to_complex",
    "format_rat",
    "format_gauss",
    "format_qratfn",
    "format_cdouble",
    "parse_rat",
    "random_real",
    "I",
    "ZERO",
    "ONE",
]

CDouble = complex
"""Numeric backend: a Python complex (``.real``/``.imag`` are the two doubles)."""


class PoleAtPoint(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

_RatLike = (int, Fraction)


class GaussRat:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _fast(re: Fraction, im: Fraction) -> "GaussRat":
        g = object.__new__(GaussRat)
        object.__setattr__(g, "re", re)
        object.__setattr__(g, "im", im)
        return g

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, _RatLike):
            return cls._fast(Fraction(x), Fraction(0))
        if isinstance(x, Rational):
            return cls._fast(Fraction(x.numerator, x.denominator), Fraction(0))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._fast(self.re + other.re, self.im + other.im)
        if isinstance(other, _RatLike):
            return GaussRat._fast(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._fast(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._fast(self.re - other.re, self.im - other.im)
        if isinstance(other, _RatLike):
            return GaussRat._fast(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RatLike):
            return GaussRat._fast(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussRat._fast(a * c, b)
            return GaussRat._fast(a * c - b * d, a * d + b * c)
        if isinstance(other, _RatLike):
            return GaussRat._fast(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._fast(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRat):
            if not other.im:
                if not other.re:
                    raise ZeroDivisionError("GaussRat division by zero")
                return GaussRat._fast(self.re / other.re, self.im / other.re)
            return self * other.inverse()
        if isinstance(other, _RatLike):
            return GaussRat._fast(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RatLike):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussRat._fast(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RatLike):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussRat":
        return GaussRat._fast(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({format_gauss(self)!r})"

    def __str__(self):
        return format_gauss(self)


I = GaussRat(0, 1)
ZERO = GaussRat(0)
ONE = GaussRat(1)


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_gauss(z: GaussRat) -> str:
    re_, im_ = z.re, z.im
    if not im_:
        return format_rat(re_)
    den = re_.denominator * im_.denominator // _gcd(re_.denominator, im_.denominator)
    nre = int(re_ * den)
    nim = int(im_ * den)
    if nim == 1:
        ipart = "i"
    elif nim == -1:
        ipart = "-i"
    else:
        ipart = f"{nim}i"
    if nre:
        body = f"{nre}{'+' if nim > 0 else ''}{ipart}"
        return body if den == 1 else f"({body})/{den}"
    return ipart if den == 1 else f"{ipart}/{den}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# Univariate polynomial helpers (tuples of GaussRat, lowest degree first)
# ---------------------------------------------------------------------------

Poly = tuple


def _trim(p: Sequence[GaussRat]) -> Poly:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(p: Poly, r: Poly) -> Poly:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for k, c in enumerate(r):
        out[k] = out[k] + c
    return _trim(out)


def _psub(p: Poly, r: Poly) -> Poly:
    return _padd(p, tuple(-c for c in r))


def _pmul(p: Poly, r: Poly) -> Poly:
    if not p or not r:
        return ()
    out = [ZERO] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(r):
            if b:
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _pscale(p: Poly, c: GaussRat) -> Poly:
    if not c:
        return ()
    return tuple(a * c for a in p)


def _low(p: Poly) -> int:
    for k, c in enumerate(p):
        if c:
            return k
    return len(p)


def _is_monomial(p: Poly) -> bool:
    return bool(p) and _low(p) == len(p) - 1


def _pdivmod(p: Poly, r: Poly) -> tuple[Poly, Poly]:
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    dr = len(r) - 1
    lead_inv = r[-1].inverse()
    if len(p) <= dr:
        return (), _trim(p)
    quot = [ZERO] * (len(p) - dr)
    for k in range(len(p) - 1, dr - 1, -1):
        c = p[k]
        if not c:
            continue
        c = c * lead_inv
        quot[k - dr] = c
        for j in range(dr + 1):
            if r[j]:
                p[k - dr + j] = p[k - dr + j] - c * r[j]
    return _trim(quot), _trim(p[:dr])


def _monic(p: Poly) -> Poly:
    if not p:
        return p
    inv = p[-1].inverse()
    return tuple(c * inv for c in p)


def _pgcd(p: Poly, r: Poly) -> Poly:
    """Monic gcd, with a shortcut when either side is a power of q."""
    if not p:
        return _monic(r)
    if not r:
        return _monic(p)
    if _is_monomial(p) or _is_monomial(r):
        k = min(_low(p), _low(r))
        return (ZERO,) * k + (ONE,)
    while r:
        p, r = r, _pdivmod(p, r)[1]
    return _monic(p)


def _shift_down(p: Poly, k: int) -> Poly:
    return tuple(p[k:])


# ---------------------------------------------------------------------------
# Rational functions of q
# ---------------------------------------------------------------------------


class QRatFn:
    """Reduced fraction ``num(q)/den(q)`` with monic denominator.

    ``q`` is treated as a real indeterminate, so conjugation acts on the
    coefficients only.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable = (), den: Iterable = (ONE,)):
        num = _trim(tuple(GaussRat.coerce(c) for c in num))
        den = _trim(tuple(GaussRat.coerce(c) for c in den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        n, d = QRatFn._reduce(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("QRatFn is immutable")

    @staticmethod
    def _raw(num: Poly, den: Poly) -> "QRatFn":
        f = object.__new__(QRatFn)
        object.__setattr__(f, "num", num)
        object.__setattr__(f, "den", den)
        return f

    @staticmethod
    def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
        if not num:
            return (), (ONE,)
        if len(den) == 1:
            inv = den[0].inverse()
            return (num if den[0] == ONE else _pscale(num, inv)), (ONE,)
        if _is_monomial(den):
            k = min(_low(num), len(den) - 1)
            lead = den[-1]
            num = _shift_down(num, k)
            den = (ZERO,) * (len(den) - 1 - k) + (ONE,)
            if lead != ONE:
                num = _pscale(num, lead.inverse())
            return num, den
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != ONE:
            inv = lead.inverse()
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        return num, den

    @classmethod
    def q(cls) -> "QRatFn":
        return cls._raw((ZERO, ONE), (ONE,))

    @classmethod
    def const(cls, c) -> "QRatFn":
        c = GaussRat.coerce(c)
        return cls._raw((c,) if c else (), (ONE,))

    @classmethod
    def coerce(cls, x) -> "QRatFn":
        if isinstance(x, QRatFn):
            return x
        return cls.const(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QRatFn):
            try:
                other = QRatFn.const(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return QRatFn._raw(*QRatFn._reduce(_padd(self.num, other.num), self.den))
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return QRatFn._raw(*QRatFn._reduce(num, _pmul(self.den, other.den)))

    __radd__ = __add__

    def __neg__(self):
        return QRatFn._raw(tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, QRatFn):
            try:
                other = QRatFn.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QRatFn):
            try:
                c = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return QRatFn._raw((), (ONE,))
            return QRatFn._raw(_pscale(self.num, c), self.den)
        if not self.num or not other.num:
            return QRatFn._raw((), (ONE,))
        if len(self.den) == 1 and len(other.den) == 1:
            return QRatFn._raw(_pmul(self.num, other.num), (ONE,))
        return QRatFn._raw(*QRatFn._reduce(_pmul(self.num, other.num), _pmul(self.den, other.den)))

    __rmul__ = __mul__

    def inverse(self) -> "QRatFn":
        if not self.num:
            raise ZeroDivisionError("QRatFn division by zero")
        lead = self.num[-1].inverse()
        return QRatFn._raw(_pscale(self.den, lead), _pscale(self.num, lead))

    def __truediv__(self, other):
        if not isinstance(other, QRatFn):
            try:
                c = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
            return self * c.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if _is_monomial(self.num) and len(self.den) <= 1:
            k = len(self.num) - 1
            return QRatFn._raw((ZERO,) * (k * n) + (self.num[-1] ** n,), (ONE,))
        result = QRatFn.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QRatFn):
            return self.num == other.num and self.den == other.den
        try:
            c = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.den == (ONE,) and self.num == ((c,) if c else ())

    def __hash__(self):
        if self.den == (ONE,) and len(self.num) <= 1:
            return hash(self.num[0]) if self.num else hash(0)
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else ZERO

    def conjugate(self) -> "QRatFn":
        return QRatFn._raw(tuple(c.conjugate() for c in self.num), tuple(c.conjugate() for c in self.den))

    def __call__(self, q0):
        return eval_q(self, q0)

    def __complex__(self):
        return complex(self.constant())

    def __repr__(self):
        return f"QRatFn({format_qratfn(self)!r})"

    def __str__(self):
        return format_qratfn(self)


def _format_coeff_term(c: GaussRat, k: int) -> str:
    """One term ``c*q^k`` of a polynomial, with an explicit leading sign."""
    mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
    if not c.im:
        neg = c.re < 0
        mag = -c.re if neg else c.re
        s = format_rat(mag)
        if mono:
            s = mono if mag == 1 else f"{s}*{mono}"
        return ("-" if neg else "+") + s
    if not c.re:
        neg = c.im < 0
        s = format_gauss(-c if neg else c)
        if mono:
            s = f"{s}*{mono}"
        return ("-" if neg else "+") + s
    s = format_gauss(c)
    if not s.startswith("("):
        s = f"({s})"
    return "+" + (f"{s}*{mono}" if mono else s)


def _format_poly(p: Poly) -> str:
    if not p:
        return "0"
    s = "".join(_format_coeff_term(c, k) for k, c in enumerate(p) if c)
    return s[1:] if s.startswith("+") else s


_SIMPLE = re.compile(r"-?(\d+|q(\^\d+)?|\d+\*q(\^\d+)?|i|\d+i)")


def format_qratfn(f: QRatFn) -> str:
    num = _format_poly(f.num)
    if f.den == (ONE,):
        return num
    den = _format_poly(f.den)
    if not _SIMPLE.fullmatch(num):
        num = f"({num})"
    if not _SIMPLE.fullmatch(den) or den.startswith("-"):
        den = f"({den})"
    return f"{num}/{den}"


def format_cdouble(z: complex) -> str:
    z = complex(z)
    re_, im_ = z.real, z.imag
    if im_ == 0:
        return repr(re_ + 0.0)
    sign = "-" if im_ < 0 or (im_ == 0 and str(im_).startswith("-")) else "+"
    return f"{re_ + 0.0!r}{sign}{abs(im_)!r}i"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+|\d+)"
    r"|(?P<id>[iq])|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str, pattern: re.Pattern = _TOKEN) -> list[tuple[str, str]]:
    text = text.replace("−", "-").replace("·", "*").strip()
    out: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    pattern = _TOKEN

    def __init__(self, text: str, field: "Field"):
        self.toks = _tokenize(text, self.pattern)
        self.pos = 0
        self.field = field
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty input")
        v = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "id") or val == "("

    def term(self):
        v = self.unary()
        while True:
            kind, val = self.peek()
            if val in ("*", "/"):
                self.take()
                w = self.unary()
                if val == "*":
                    v = v * w
                else:
                    if self.field.is_zero(w):
                        raise ParseError(f"division by zero in {self.text!r}")
                    v = v / w
            elif self._starts_factor():
                v = v * self.power()
            else:
                return v

    def unary(self):
        val = self.peek()[1]
        if val == "-":
            self.take()
            return -self.unary()
        if val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            paren = self.peek()[1] == "("
            if paren:
                self.take()
            sign = 1
            while self.peek()[1] in ("-", "+"):
                if self.take()[1] == "-":
                    sign = -sign
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            if paren and self.take()[1] != ")":
                raise ParseError(f"unbalanced exponent in {self.text!r}")
            return base ** (sign * int(val))
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.field.from_decimal(val)
        if kind == "id":
            if val == "i":
                return self.field.i()
            return self.field.q()
        if val == "(":
            v = self.expr()
            if self.take()[1] != ")":
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_rat(text: str) -> Fraction:
    v = GAUSS.parse(text)
    if v.im:
        raise ParseError(f"{text!r} is not real")
    return v.re


# ---------------------------------------------------------------------------
# Field contract
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """Operations every backend exposes beyond the arithmetic operators."""

    name: str
    exact: bool
    tol: float = 0.0

    # construction ---------------------------------------------------------
    def from_int(self, n: int):
        raise NotImplementedError

    def from_decimal(self, text: str):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def i(self):
        raise NotImplementedError

    def q(self):
        raise ParseError(f"the symbol q is not available in the {self.name} backend")

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    # predicates -----------------------------------------------------------
    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return self.is_zero(x - y)

    def conj(self, x):
        return x.conjugate()

    def magnitude(self, x) -> float:
        """Size of a residual, for reports."""
        if self.is_zero(x):
            return 0.0
        try:
            return abs(complex(x))
        except (TypeError, ValueError):
            return float("inf")

    # text -----------------------------------------------------------------
    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return _Parser(text, self).parse()


class _GaussField(Field):
    def from_int(self, n):
        return GaussRat(n)

    def from_decimal(self, text):
        return GaussRat(Fraction(text))

    def coerce(self, x):
        if isinstance(x, complex):
            raise TypeError("complex float cannot be embedded exactly")
        if isinstance(x, float):
            return GaussRat(Fraction(x))
        return GaussRat.coerce(x)

    def i(self):
        return I

    def is_zero(self, x):
        return not x

    def format(self, x):
        return format_gauss(GaussRat.coerce(x))


class _QRatField(Field):
    def from_int(self, n):
        return QRatFn.const(n)

    def from_decimal(self, text):
        return QRatFn.const(Fraction(text))

    def coerce(self, x):
        if isinstance(x, float):
            x = Fraction(x)
        return QRatFn.coerce(x)

    def i(self):
        return QRatFn.const(I)

    def q(self):
        return QRatFn.q()

    def is_zero(self, x):
        return not x

    def format(self, x):
        return format_qratfn(QRatFn.coerce(x))

    def magnitude(self, x):
        if not x:
            return 0.0
        x = QRatFn.coerce(x)
        if x.is_constant():
            return abs(complex(x.constant()))
        return float("inf")


class _CDoubleField(Field):
    def from_int(self, n):
        return complex(n)

    def from_decimal(self, text):
        return complex(float(text))

    def coerce(self, x):
        return complex(x)

    def i(self):
        return 1j

    def is_zero(self, x):
        return abs(x) <= self.tol

    def format(self, x):
        return format_cdouble(x)

    def magnitude(self, x):
        return abs(complex(x))


GAUSS: Field = _GaussField("gauss", True)
QRAT: Field = _QRatField("qratfn", True)
CDOUBLE: Field = _CDoubleField("cdouble", False, 1e-9)


def cdouble_field(tol: float = 1e-9) -> Field:
    return CDOUBLE if tol == CDOUBLE.tol else _CDoubleField("cdouble", False, float(tol))


def field_by_name(name: str, tol: float = 1e-9) -> Field:
    if name == "gauss":
        return GAUSS
    if name == "qratfn":
        return QRAT
    if name == "cdouble":
        return cdouble_field(tol)
    raise ValueError(f"unknown backend {name!r} (expected gauss, qratfn or cdouble)")


# ---------------------------------------------------------------------------
# Utilities
# ---------------------------------------------------------------------------


def _horner(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_q(f: QRatFn, q0):
    """Substitute ``q = q0``.  Exact inputs stay exact; floats give complex."""
    f = QRatFn.coerce(f)
    if isinstance(q0, (float, complex)):
        num = _horner(tuple(complex(c) for c in f.num), complex(q0))
        den = _horner(tuple(complex(c) for c in f.den), complex(q0))
        if den == 0:
            raise PoleAtPoint(f"{f} has a pole at q = {q0}")
        return num / den
    q0 = GaussRat.coerce(q0)
    den = _horner(f.den, q0)
    if not den:
        raise PoleAtPoint(f"{f} has a pole at q = {format_gauss(q0)}")
    num = _horner(f.num, q0)
    return GaussRat.coerce(num) / den


def to_complex(x) -> complex:
    return complex(x)


def random_point(bound: int, rng: random.Random) -> GaussRat:
    """Random Gaussian rational with numerators in [-bound, bound]."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    re_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return GaussRat._fast(re_, im_)


def random_real(bound: int, rng: random.Random) -> GaussRat:
    return GaussRat._fast(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)), Fraction(0))


def qint(n: int, x):
    """q-integer ``[n; x] = (1 - x^n)/(1 - x) = 1 + x + ... + x^(n-1)``."""
    if n < 0:
        raise ValueError("q-integers are defined here for n >= 0")
    acc = x * 0
    term = x * 0 + 1
    for _ in range(n):
        acc = acc + term
        term = term * x
    return acc
