"""Exact scalar kernel: rationals, quadratic surds and high-precision floats.

Rationals are :class:`fractions.Fraction`, floats are :class:`mpmath.mpf`,
and quadratic surds ``(p + q*sqrt(d))/r`` are :class:`Surd`.  Arithmetic on
a :class:`Surd` never silently falls back to floating point: combining it
with a surd of another field or with an ``mpf`` raises
:class:`IncompatibleFieldError`; callers downgrade explicitly via
:func:`to_float`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

import mpmath

DEFAULT_BITS = 256

Scalar = Union[int, Fraction, "Surd", mpmath.mpf]


class IncompatibleFieldError(TypeError):
    """Raised when two operands live in different quadratic fields."""


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (k, e) with d = k*k*e and e squarefree."""
    k, e = 1, 1
    rest = d
    f = 2
    while f * f <= rest:
        while rest % (f * f) == 0:
            rest //= f * f
            k *= f
        if rest % f == 0:
            rest //= f
            e *= f
        f += 1 if f == 2 else 2
    return k, e * rest


def make_surd(p: int, q: int, d: int, r: int = 1) -> Fraction | Surd:
    """Build ``(p + q*sqrt(d))/r`` in normal form; collapses to a Fraction when rational."""
    if r == 0:
        raise ZeroDivisionError("surd with zero denominator")
    if d < 0:
        raise ValueError("negative radicand is not supported")
    if d == 0 or q == 0:
        return Fraction(p, r)
    k, d = _squarefree_split(d)
    q *= k
    if d == 1:
        return Fraction(p + q, r)
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(p, q), r)
    return Surd(p // g, q // g, d, r // g, _normal=True)


class Surd:
    """The quadratic surd ``(p + q*sqrt(d))/r`` with squarefree ``d > 1``.

    Instances are immutable and always in normal form: ``r > 0``,
    ``gcd(p, q, r) = 1`` and ``q != 0``.  Use :func:`make_surd` to build one;
    it returns a ``Fraction`` when the value is rational.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int, q: int, d: int, r: int = 1, *, _normal: bool = False) -> None:
        if not _normal:
            raise TypeError("use make_surd() to construct surds")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    def _coerce(self, other) -> tuple[int, int, int] | None:
        # returns (p, q, r) in this field, or None when not a supported operand
        if isinstance(other, Surd):
            if other.d != self.d:
                raise IncompatibleFieldError(f"sqrt({self.d}) and sqrt({other.d}) fields do not mix")
            return other.p, other.q, other.r
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return f.numerator, 0, f.denominator
        if isinstance(other, (float, mpmath.mpf)):
            raise IncompatibleFieldError("surd and float do not mix; convert with to_float()")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        return make_surd(self.p * r + p * self.r, self.q * r + q * self.r, self.d, self.r * r)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d, self.r, _normal=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        return make_surd(self.p * r - p * self.r, self.q * r - q * self.r, self.d, self.r * r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        d = self.d
        return make_surd(self.p * p + self.q * q * d, self.p * q + self.q * p, d, self.r * r)

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd(self.p, -self.q, self.d, self.r, _normal=True)

    def norm(self) -> Fraction:
        """Field norm ``x * conjugate(x)``, a rational."""
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    def inverse(self) -> Surd:
        nrm = self.norm()  # nonzero: sqrt(d) is irrational and q != 0
        c = self.conjugate()
        return make_surd(c.p * nrm.denominator, c.q * nrm.denominator, self.d, c.r * nrm.numerator)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            self._coerce(other)
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[0] == 0:
            raise ZeroDivisionError("surd division by zero")
        return self * Fraction(o[2], o[0])

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * Fraction(o[0], o[2])

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result: Fraction | Surd = Fraction(1)
        base: Fraction | Surd = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of ``p + q*sqrt(d)`` decided by comparing squares."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: the larger square wins
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        return sp if lhs > rhs else sq

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q, self.d, self.r))

    def _cmp(self, other) -> int:
        return scalar_sign(self - other)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return True

    def __float__(self):
        return float(to_float(self, 64))

    def __repr__(self):
        return f"Surd({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd))


def scalar_sign(x, tol=0) -> int:
    """Sign of ``x``; floats within ``tol`` of zero count as zero."""
    if isinstance(x, Surd):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if abs(x) <= tol:
        return 0
    return 1 if x > 0 else -1


def to_float(x, bits: int = DEFAULT_BITS) -> mpmath.mpf:
    """Round ``x`` to an ``mpf`` with ``bits`` of precision (guard bits used internally)."""
    if bits < 64:
        raise ValueError("precision below 64 bits is not supported")
    with mpmath.workprec(bits + 32):
        if isinstance(x, Surd):
            v = (mpmath.mpf(x.p) + x.q * mpmath.sqrt(x.d)) / x.r
        elif isinstance(x, Fraction):
            v = mpmath.mpf(x.numerator) / x.denominator
        else:
            v = mpmath.mpf(x)
    with mpmath.workprec(bits):
        return +v


def sqrt_exact(x: Fraction | int) -> Fraction | Surd:
    """Square root of a nonnegative rational as a Fraction or Surd."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    return make_surd(0, 1, num * den, den)


def exact_sqrt_if_square(x: Fraction | int) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


_FLOAT_RE = re.compile(r"^float(\d+):(.+)$")
_SURD_RE = re.compile(
    r"^\(?\s*(?P<p>[+-]?\s*\d+)?\s*(?P<sgn>[+-])?\s*(?P<q>\d+)?\s*\*?\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*\)?"
    r"\s*(?:/\s*(?P<r>\d+))?$"
)


def parse_scalar(text: str | int) -> Scalar:
    """Parse ``"p/q"``, ``"(p+q*sqrt(d))/r"`` or ``"float<bits>:<decimal>"``.

    Plain decimals such as ``"0.25"`` parse as exact rationals.
    """
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    m = _FLOAT_RE.match(s)
    if m:
        bits = int(m.group(1))
        with mpmath.workprec(bits):
            return mpmath.mpf(m.group(2).strip())
    if "sqrt" in s:
        m = _SURD_RE.match(s)
        if not m:
            raise ValueError(f"malformed surd: {text!r}")
        p = int(m.group("p").replace(" ", "")) if m.group("p") else 0
        q = int(m.group("q")) if m.group("q") else 1
        if m.group("sgn") == "-":
            q = -q
        elif m.group("sgn") is None and m.group("p") and m.group("q") is None:
            raise ValueError(f"malformed surd: {text!r}")
        r = int(m.group("r")) if m.group("r") else 1
        return make_surd(p, q, int(m.group("d")), r)
    try:
        return Fraction(s)
    except ValueError as exc:
        raise ValueError(f"malformed scalar: {text!r}") from exc


def format_scalar(x, bits: int | None = None, digits: int | None = None) -> str:
    """Canonical text form, inverse of :func:`parse_scalar`."""
    if isinstance(x, Surd):
        sgn = "+" if x.q > 0 else "-"
        return f"({x.p}{sgn}{abs(x.q)}*sqrt({x.d}))/{x.r}"
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    bits = bits or DEFAULT_BITS
    if digits is None:
        digits = int(bits * math.log10(2)) + 1
    return f"float{bits}:{mpmath.nstr(x, digits, strip_zeros=False)}"


def display(x, digits: int = 6) -> str:
    """Short human form: exact text for exact values, ``digits`` significant digits for floats."""
    if is_exact(x):
        return format_scalar(x)
    return mpmath.nstr(x, digits)
