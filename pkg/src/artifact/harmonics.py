"""Hyperoctahedral-invariant harmonic polynomials of degree at most 10.

``sym(pattern)`` denotes the sum of all *distinct* monomials obtained by
permuting the variables of ``x**pattern``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .orbits import GCVOrbit


class DimensionTooSmallError(ValueError):
    pass


class InvariantId(Enum):
    F4 = ("F4", 4, 3)
    F6 = ("F6", 6, 3)
    F81 = ("F81", 8, 3)
    F82 = ("F82", 8, 4)
    F101 = ("F101", 10, 3)
    F102 = ("F102", 10, 5)

    def __init__(self, label: str, degree: int, min_dim: int):
        self.label = label
        self.degree = degree
        self.min_dim = min_dim


@dataclass(frozen=True)
class SymPolynomial:
    """A linear combination of ``sym(pattern)`` terms in ``n`` variables."""

    n: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0])

    def expand(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent vector -> coefficient, one entry per distinct monomial."""
        return dict(_expand(self))


@lru_cache(maxsize=None)
def _distinct_monomials(pattern: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    # place each block of equal exponents on a set of positions
    blocks: list[tuple[int, int]] = []
    for e, grp in itertools.groupby(pattern):
        blocks.append((e, len(list(grp))))
    out = []

    def rec(i: int, free: tuple[int, ...], current: list[int]):
        if i == len(blocks):
            out.append(tuple(current))
            return
        e, mult = blocks[i]
        for chosen in itertools.combinations(free, mult):
            for j in chosen:
                current[j] = e
            rest = tuple(j for j in free if j not in chosen)
            rec(i + 1, rest, current)
            for j in chosen:
                current[j] = 0

    rec(0, tuple(range(n)), [0] * n)
    return tuple(out)


@lru_cache(maxsize=None)
def _expand_cached(p: SymPolynomial) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    acc: dict[tuple[int, ...], Fraction] = {}
    for pattern, coef in p.terms:
        for mono in _distinct_monomials(pattern, p.n):
            acc[mono] = acc.get(mono, Fraction(0)) + coef
    return tuple((m, c) for m, c in acc.items() if c != 0)


def _expand(p: SymPolynomial):
    return _expand_cached(p)


def build_invariant(inv: InvariantId, n: int) -> SymPolynomial:
    if n < inv.min_dim:
        raise DimensionTooSmallError(f"{inv.label} needs n >= {inv.min_dim}, got {n}")
    F = Fraction
    if inv is InvariantId.F4:
        terms = [((4,), F(1)), ((2, 2), F(-6, n - 1))]
    elif inv is InvariantId.F6:
        terms = [((6,), F(1)), ((4, 2), F(-15, n - 1)), ((2, 2, 2), F(180, (n - 1) * (n - 2)))]
    elif inv is InvariantId.F81:
        terms = [((8,), F(1)), ((6, 2), F(-28, n - 1)), ((4, 4), F(70, n - 1))]
    elif inv is InvariantId.F82:
        terms = [
            ((4, 4), F(1)),
            ((4, 2, 2), F(-6, n - 2)),
            ((2, 2, 2, 2), F(108, (n - 2) * (n - 3))),
        ]
    elif inv is InvariantId.F101:
        terms = [
            ((10,), F(1)),
            ((8, 2), F(-45, n - 1)),
            ((6, 4), F(42, n - 1)),
            ((6, 2, 2), F(1008, (n - 1) * (n - 2))),
            ((4, 4, 2), F(-1260, (n - 1) * (n - 2))),
        ]
    else:
        terms = [
            ((6, 4), F(1)),
            ((6, 2, 2), F(-6, n - 2)),
            ((4, 4, 2), F(-30, n - 2)),
            ((4, 2, 2, 2), F(450, (n - 2) * (n - 3))),
            ((2, 2, 2, 2, 2), F(-10800, (n - 2) * (n - 3) * (n - 4))),
        ]
    return SymPolynomial(n, tuple(terms))


def eval_invariant_direct(p: SymPolynomial, point):
    """Evaluate ``p`` at a point by summing its distinct monomials.

    ``point`` is either an exact ``(signs, squares)`` pair or a tuple of
    float coordinates.  Every monomial has even exponents, so only squared
    coordinates enter.
    """
    if isinstance(point, tuple) and len(point) == 2 and isinstance(point[0], tuple):
        squares = point[1]
    else:
        squares = tuple(x * x for x in point)
    if len(squares) != p.n:
        raise ValueError("point dimension does not match polynomial")
    total = Fraction(0)
    for mono, coef in _expand(p):
        val = coef
        for q, e in zip(squares, mono):
            if e:
                val = val * q ** (e // 2)
        total = total + val
    return total


def eval_invariant_closed(inv: InvariantId, o: GCVOrbit):
    """Closed form of ``(A+s)^(deg/2) * f(v_{a,s})`` as a polynomial in ``A``, ``s`` and ``n``."""
    n, s, A = o.n, o.s, o.A
    if n < inv.min_dim:
        raise DimensionTooSmallError(f"{inv.label} needs n >= {inv.min_dim}, got {n}")
    F = Fraction
    if inv is InvariantId.F4:
        return A**2 + s - 6 * A * F(s, n - 1) - 3 * F(s * (s - 1), n - 1)
    if inv is InvariantId.F6:
        return (
            A**3 + s
            - 15 * (A**2 + A + s - 1) * F(s, n - 1)
            + 90 * A * F(s * (s - 1), (n - 1) * (n - 2))
            + 30 * F(s * (s - 1) * (s - 2), (n - 1) * (n - 2))
        )
    if inv is InvariantId.F81:
        return (
            A**4 + s
            - 28 * (A**3 + A + s - 1) * F(s, n - 1)
            + 70 * (A**2 + F(s - 1, 2)) * F(s, n - 1)
        )
    if inv is InvariantId.F82:
        # every term carries a factor s: sym(x1^4 x2^4) at v_{a,s} is s*(A^2 + (s-1)/2)
        inner = (
            A**2 + F(s - 1, 2)
            - 3 * (A**2 + 2 * A + s - 2) * F(s - 1, n - 2)
            + F(9, 2) * (4 * A + s - 3) * F((s - 1) * (s - 2), (n - 2) * (n - 3))
        )
        return s * inner
    if inv is InvariantId.F101:
        return (
            A**5 + s
            - 3 * (15 * A**4 - 14 * A**3 - 14 * A**2 + 15 * A + s - 1) * F(s, n - 1)
            + 126 * (4 * A**3 - 10 * A**2 + 3 * A - s + 2) * F(s * (s - 1), (n - 1) * (n - 2))
        )
    return (
        A**2 * s + A**3 * s + s * (s - 1)
        - 3 * (A**3 + 10 * A**2 + 7 * A + 6 * s - 12) * F(s * (s - 1), n - 2)
        + 75 * (A**2 + 3 * A + s - 3) * F(s * (s - 1) * (s - 2), (n - 2) * (n - 3))
        - 90 * (5 * A + s - 4) * F(s * (s - 1) * (s - 2) * (s - 3), (n - 2) * (n - 3) * (n - 4))
    )


def invariant_value(inv: InvariantId, o: GCVOrbit):
    """``f(v_{a,s})`` on the unit sphere, i.e. the closed form divided by ``(A+s)^(deg/2)``."""
    return eval_invariant_closed(inv, o) / o.norm2 ** (inv.degree // 2)


def invariant_harmonic_dims(n: int, max_degree: int) -> list[tuple[int, int]]:
    """Coefficients of ``1/((1-x^4)(1-x^6)...(1-x^{2n}))`` up to ``max_degree``."""
    if n < 3:
        raise ValueError("n must be at least 3")
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for k in range(2, n + 1):
        step = 2 * k
        for d in range(step, max_degree + 1):
            coeffs[d] += coeffs[d - step]
    return list(enumerate(coeffs))


def applicable_invariants(n: int, degree: int) -> list[InvariantId]:
    """The invariants of the given degree that exist in dimension ``n``; they form a basis."""
    return [inv for inv in InvariantId if inv.degree == degree and n >= inv.min_dim]
