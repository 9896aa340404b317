"""Hilbert identities ``c (X_1^2 + ... + X_n^2)^t = sum_i c_i (a_i . X)^{2t}``.

A cubature of index ``2t`` on the sphere gives such an identity by pairing
antipodal points; conversely an identity is checked here by expanding both
sides monomial by monomial.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .design import PAIRS, FLOAT_RESIDUAL_TOL, WeightedDesign, moment_residual
from .moments import even_partitions, sphere_moment
from .scalars import DEFAULT_BITS, display, format_scalar, is_exact, parse_scalar, scalar_sign, sqrt_exact, to_float


class NotIndexDesignError(ValueError):
    pass


def c_nt(n: int, t: int) -> Fraction:
    """Average of ``y_1^{2t}`` over the unit sphere in ``R^n``."""
    if n < 2 or t < 0:
        raise ValueError("need n >= 2 and t >= 0")
    return sphere_moment(n, (2 * t,) + (0,) * (n - 1))


@dataclass(frozen=True)
class HilbertIdentity:
    n: int
    t: int
    c: object
    terms: tuple[tuple[object, tuple], ...]

    @property
    def is_rational(self) -> bool:
        return isinstance(self.c, (int, Fraction)) and all(
            isinstance(coef, (int, Fraction)) and all(isinstance(x, (int, Fraction)) for x in form)
            for coef, form in self.terms
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "c": format_scalar(self.c),
            "terms": [{"coef": format_scalar(coef), "form": [format_scalar(x) for x in form]} for coef, form in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> HilbertIdentity:
        n, t = int(obj["n"]), int(obj["t"])
        terms = []
        for item in obj.get("terms", []):
            terms.append((parse_scalar(item["coef"]), tuple(parse_scalar(x) for x in item["form"])))
        # compact notation: one form per orbit of signed permutations
        for item in obj.get("orbit_terms", []):
            coef = parse_scalar(item["coef"])
            base = tuple(parse_scalar(x) for x in item["form"])
            terms.extend((coef, f) for f in expand_form_orbit(base))
        return cls(n, t, parse_scalar(obj["c"]), tuple(terms))


def _leading_positive(v: tuple) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


def expand_form_orbit(form) -> list[tuple]:
    """Distinct signed permutations of ``form``, one from each ``+-`` pair."""
    form = tuple(form)
    out = set()
    nonzero = [i for i, x in enumerate(form) if x != 0]
    for perm in set(itertools.permutations(form)):
        idx = [i for i, x in enumerate(perm) if x != 0]
        for signs in itertools.product((1, -1), repeat=len(idx)):
            v = list(perm)
            for i, sg in zip(idx, signs):
                v[i] = sg * v[i]
            v = tuple(v)
            if _leading_positive(v):
                out.add(v)
    if not nonzero:
        return [form]
    return sorted(out, key=lambda v: tuple(-float(x) for x in v))


def identity_from_orbits(n: int, t: int, c, orbit_terms) -> HilbertIdentity:
    """Build an identity from ``(coef, form)`` pairs, each summed over its orbit of forms."""
    terms = []
    for coef, form in orbit_terms:
        if len(form) != n:
            raise ValueError("form length does not match n")
        terms.extend((coef, f) for f in expand_form_orbit(form))
    return HilbertIdentity(n, t, c, tuple(terms))


def schur_identity() -> HilbertIdentity:
    """Schur's rational identity of degree 10 in four variables."""
    F = Fraction
    return identity_from_orbits(
        4,
        5,
        F(22680),
        [
            (F(1), (F(2), F(1), F(1), F(0))),
            (F(9), (F(2), F(0), F(0), F(0))),
            (F(180), (F(1), F(1), F(0), F(0))),
            (F(9), (F(1), F(1), F(1), F(1))),
        ],
    )


# ---------------------------------------------------------------- design -> identity


def _check_index(d: WeightedDesign, t: int, tol, bits: int):
    with mpmath.workprec(bits):
        dd = d if d.is_exact else d.to_float(bits)
        for lam in even_partitions(d.n, 2 * t):
            r = moment_residual(dd, lam)
            if (r != 0) if dd.is_exact else (abs(r) > tol):
                raise NotIndexDesignError(f"moment {lam} off by {display(r)}; not of index {2 * t}")


def _largest_power_divisor(m: int, e: int) -> int:
    """Largest ``k`` with ``k**e`` dividing the positive integer ``m``."""
    k = 1
    rest = m
    p = 2
    while p * p <= rest:
        mult = 0
        while rest % p == 0:
            rest //= p
            mult += 1
        k *= p ** (mult // e)
        p += 1
    return k  # a leftover prime appears once, so it never contributes when e >= 2


def design_to_identity(
    d: WeightedDesign,
    t: int,
    clear: bool = True,
    tol: float = FLOAT_RESIDUAL_TOL,
    bits: int = DEFAULT_BITS,
) -> HilbertIdentity:
    """The identity carried by a design whose degree-``2t`` moments are exact.

    Each orbit contributes one term per antipodal pair, with linear form
    ``(+-a, +-1, ..., 0)`` up to permutation and coefficient
    ``pair_weight / (A + s)^t``.  With ``clear`` and rational data the
    identity is scaled to coprime integers, and any factor ``k^{2t}`` of a
    coefficient is moved into its forms as ``k``.
    """
    _check_index(d, t, tol, bits)
    exact = d.is_exact
    c = c_nt(d.n, t)
    raw = []
    for o, W in d.orbits:
        pair_weight = W if d.convention == PAIRS else 2 * W
        if exact:
            if not isinstance(o.A, (int, Fraction)):
                raise ValueError("exact forms need a rational A; use a float design instead")
            a = sqrt_exact(o.A)
            coef = pair_weight / o.norm2**t
        else:
            with mpmath.workprec(bits):
                a = mpmath.sqrt(to_float(o.A, bits))
                coef = to_float(pair_weight, bits) / to_float(o.norm2, bits) ** t
        one = Fraction(1) if exact else mpmath.mpf(1)
        zero = Fraction(0) if exact else mpmath.mpf(0)
        base = (a,) + (one,) * o.s + (zero,) * (d.n - 1 - o.s)
        raw.append((coef, base))
    if not exact:
        c = to_float(c, bits)
    rational = exact and all(isinstance(coef, Fraction) for coef, _ in raw)
    if clear and rational:
        den = math.lcm(c.denominator, *(coef.denominator for coef, _ in raw))
        c = c * den
        raw = [(coef * den, base) for coef, base in raw]
        g = math.gcd(c.numerator, *(coef.numerator for coef, _ in raw))
        c, raw = c / g, [(coef / g, base) for coef, base in raw]
        absorbed = []
        for coef, base in raw:
            k = _largest_power_divisor(coef.numerator, 2 * t) if t > 0 else 1
            absorbed.append((coef / k ** (2 * t), tuple(k * x for x in base)))
        g = math.gcd(c.numerator, *(coef.numerator for coef, _ in absorbed))
        c, raw = c / g, [(coef / g, base) for coef, base in absorbed]
    terms = []
    for coef, base in raw:
        terms.extend((coef, f) for f in expand_form_orbit(base))
    return HilbertIdentity(d.n, t, c, tuple(terms))


# ---------------------------------------------------------------- verification


@dataclass
class IdentityReport:
    passed: bool
    exact: bool
    worst: object = 0
    worst_monomial: tuple | None = None
    first_failure: tuple | None = None
    residuals: dict = field(default_factory=dict)
    monomials_checked: int = 0

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "exact": self.exact,
            "worst": display(self.worst),
            "worst_monomial": self.worst_monomial,
            "first_failure": None
            if self.first_failure is None
            else {"monomial": self.first_failure[0], "residual": display(self.first_failure[1])},
            "monomials_checked": self.monomials_checked,
        }


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _power_coefficients(form: tuple, degree: int, zero) -> dict:
    """Monomial coefficients of ``(form . X)^degree`` over the support of ``form``."""
    support = [i for i, x in enumerate(form) if x != 0]
    n = len(form)
    out = {}
    if not support:
        if degree == 0:
            out[(0,) * n] = zero + 1
        return out
    fact = math.factorial(degree)
    for ks in _compositions(degree, len(support)):
        mult = fact
        for k in ks:
            mult //= math.factorial(k)
        val = zero + mult
        for i, k in zip(support, ks):
            if k:
                val = val * form[i] ** k
        exps = [0] * n
        for i, k in zip(support, ks):
            exps[i] = k
        out[tuple(exps)] = val
    return out


def _lhs_coefficient(c, n: int, t: int, exps: tuple):
    if any(e % 2 for e in exps):
        return 0
    mult = math.factorial(t)
    for e in exps:
        mult //= math.factorial(e // 2)
    return c * mult


def verify_identity(h: HilbertIdentity, tol: float = FLOAT_RESIDUAL_TOL, bits: int = DEFAULT_BITS) -> IdentityReport:
    """Compare every degree-``2t`` monomial coefficient of both sides.

    Only monomials reachable from the supports of the forms, plus the even
    monomials of the left side, are visited.  Residuals are right side minus
    left side; the first failure is the first in descending lexicographic
    order of exponents.  Float data is compared with a tolerance relative to
    the largest left-side coefficient.
    """
    exact = is_exact(h.c) and all(is_exact(coef) and all(is_exact(x) for x in f) for coef, f in h.terms)
    with mpmath.workprec(bits):
        zero = Fraction(0) if exact else mpmath.mpf(0)
        c = h.c if exact else to_float(h.c, bits)
        rhs: dict = {}
        for coef, form in h.terms:
            if len(form) != h.n:
                raise ValueError("form length does not match n")
            if not exact:
                coef = to_float(coef, bits)
                form = tuple(to_float(x, bits) for x in form)
            for mono, val in _power_coefficients(tuple(form), 2 * h.t, zero).items():
                rhs[mono] = rhs.get(mono, zero) + coef * val
        keys = set(rhs)
        for lam in even_partitions(h.n, 2 * h.t):
            keys.update(set(itertools.permutations(lam)))
        scale = abs(_lhs_coefficient(c, h.n, h.t, (2 * h.t,) + (0,) * (h.n - 1))) or 1
        report = IdentityReport(True, exact, zero, monomials_checked=len(keys))
        for mono in sorted(keys, reverse=True):
            res = rhs.get(mono, zero) - _lhs_coefficient(c, h.n, h.t, mono)
            bad = res != 0 if exact else abs(res) > tol * scale
            if abs(res) > abs(report.worst):
                report.worst, report.worst_monomial = res, mono
            if bad:
                report.residuals[mono] = res
                if report.passed:
                    report.passed = False
                    report.first_failure = (mono, res)
    return report


def _is_corner_form(form: tuple) -> bool:
    # a multiple of (a, +-1, ..., +-1, 0, ...) up to permutation: one magnitude may stand alone
    counts = Counter(abs(x) for x in form if x != 0)
    return len(counts) <= 1 or (len(counts) == 2 and min(counts.values()) == 1)


def degree_bound_tripwire(h: HilbertIdentity, report: IdentityReport) -> str | None:
    """Message when a verified corner-type identity has ``t >= 8`` in dimension at least 4.

    Positive identities of that shape cannot exist beyond ``t = 7``, so a
    verified one signals a bug upstream.
    """
    if not report.passed or h.n < 4 or h.t < 8:
        return None
    if all(scalar_sign(coef) == 1 for coef, _ in h.terms) and all(_is_corner_form(f) for _, f in h.terms):
        return f"verified corner-type identity with t={h.t} contradicts the bound t <= 7"
    return None

