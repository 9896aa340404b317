"""Monomial moments on the sphere, on orbits, and on the simplex.

All moments are normalized averages.  Sphere and simplex moments are
rational; orbit moments live in the field of ``A``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .orbits import GCVOrbit
from .scalars import is_exact


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _rising(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def sphere_moment(n: int, lam) -> Fraction:
    """Average of ``y**lam`` over the unit sphere in ``R^n``.

    Zero unless every exponent is even; otherwise
    ``prod(lam_i!/(lam_i/2)!) / (2^m * prod_{j<m}(n + 2j))`` with ``m = |lam|/2``.
    """
    if n < 2:
        raise ValueError("sphere moments need n >= 2")
    if len(lam) > n:
        raise ValueError("exponent longer than dimension")
    if any(e % 2 for e in lam):
        return Fraction(0)
    m = sum(lam) // 2
    num = 1
    for e in lam:
        num *= factorial(e) // factorial(e // 2)
    den = 2**m
    for j in range(m):
        den *= n + 2 * j
    return Fraction(num, den)


def _half_exponents(lam) -> tuple[int, ...] | None:
    if any(e % 2 for e in lam):
        return None
    return tuple(sorted((e // 2 for e in lam if e), reverse=True))


def _orbit_moment(n: int, A, s: int, exps: tuple[int, ...]):
    k = len(exps)
    if k > s + 1:
        return Fraction(0)
    total = sum(exps)
    norm2 = A + s
    placements = n * comb(n - 1, s)
    # support entirely in the tail; the head sits outside the support
    acc = _binom(n - k, 1) * _binom(n - k - 1, s - k) / norm2**total
    # head on one support slot, remaining support slots in the tail
    head_count = _binom(n - k, s - k + 1)
    if head_count:
        for e in exps:
            acc += head_count * A**e / norm2**total
    return acc / placements


_orbit_moment_exact = lru_cache(maxsize=1 << 16)(_orbit_moment)


def orbit_moment(o: GCVOrbit, lam):
    """Average of ``x**lam`` over the orbit of ``o``, computed combinatorially.

    Each distinct orbit point is hit equally often when the head is treated
    as a labeled slot, so the same count works when ``A = 1``.
    """
    exps = _half_exponents(lam)
    if exps is None:
        return Fraction(0)
    if len(lam) > o.n:
        raise ValueError("exponent longer than dimension")
    if is_exact(o.A):
        return _orbit_moment_exact(o.n, o.A, o.s, exps)
    return _orbit_moment(o.n, o.A, o.s, exps)


def orbit_moment_dA(o: GCVOrbit, lam):
    """Partial derivative of :func:`orbit_moment` with respect to ``A``."""
    exps = _half_exponents(lam)
    if exps is None or len(exps) > o.s + 1:
        return Fraction(0)
    n, A, s = o.n, o.A, o.s
    k = len(exps)
    m = sum(exps)
    norm2 = A + s
    placements = n * comb(n - 1, s)
    # d/dA (A+s)^-m = -m (A+s)^-(m+1);  d/dA A^p (A+s)^-m = p A^(p-1) (A+s)^-m - m A^p (A+s)^-(m+1)
    acc = _binom(n - k, 1) * _binom(n - k - 1, s - k) * (-m) / norm2 ** (m + 1)
    head_count = _binom(n - k, s - k + 1)
    if head_count:
        for e in exps:
            acc += head_count * (e * A ** (e - 1) / norm2**m - m * A**e / norm2 ** (m + 1))
    return acc / placements


def simplex_moment(n: int, alpha) -> Fraction:
    """Normalized moment of ``y**alpha`` on the simplex ``T^{n-1}`` with the Chebyshev-type weight.

    This is the Dirichlet(1/2, ..., 1/2) moment with ``n`` parameters:
    ``prod (1/2)_{alpha_i} / (n/2)_{|alpha|}``.
    """
    if n < 2:
        raise ValueError("simplex moments need n >= 2")
    if len(alpha) != n - 1:
        raise ValueError(f"exponent must have length {n - 1}")
    half = Fraction(1, 2)
    num = Fraction(1)
    for a in alpha:
        num *= _rising(half, a)
    return num / _rising(Fraction(n, 2), sum(alpha))


def even_partitions(n: int, degree: int):
    """Nonincreasing exponent vectors with even entries, at most ``n`` parts, summing to ``degree``."""
    if degree % 2:
        return []
    out = []

    def rec(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            out.append(tuple(prefix) + (0,) * (n - len(prefix)))
            return
        if len(prefix) == n:
            return
        for e in range(min(cap, remaining), 0, -2):
            prefix.append(e)
            rec(remaining - e, e, prefix)
            prefix.pop()

    rec(degree, degree, [])
    return out
