"""Generalized corner vectors ``v_{a,s}`` and their hyperoctahedral orbits.

A generalized corner vector in dimension ``n`` is ``(a, 1, ..., 1, 0, ..., 0)``
with ``s`` ones, normalized to the unit sphere.  Only ``A = a**2`` is stored,
so every quantity below stays in the field of ``A``.

Exact points are ``(signs, squares)`` pairs: ``signs[i]`` is -1, 0 or 1 and
``squares[i]`` is the squared coordinate, so no square root is materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .scalars import DEFAULT_BITS, format_scalar, is_exact, parse_scalar, scalar_sign, to_float

DEFAULT_CAP = 10**7

# coordinate class codes used in enumeration order
ZERO, TAIL, HEAD = 0, 1, 2


class CapExceededError(ValueError):
    pass


@dataclass(frozen=True)
class GCVOrbit:
    n: int
    A: object
    s: int

    def __post_init__(self):
        A = self.A
        if isinstance(A, (int, str)):
            A = parse_scalar(A)
            object.__setattr__(self, "A", A)
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        if not 0 <= self.s <= self.n - 1:
            raise ValueError(f"tail length s={self.s} outside [0, {self.n - 1}]")
        if scalar_sign(A) != 1:
            raise ValueError("A = a^2 must be positive")

    @property
    def is_corner(self) -> bool:
        return self.A == 1

    @property
    def norm2(self):
        """``A + s``, the squared length of the unnormalized vector."""
        return self.A + self.s

    @property
    def head_sq(self):
        return self.A / (self.A + self.s)

    @property
    def tail_sq(self):
        return 1 / (self.A + self.s)

    def to_json(self) -> dict:
        return {"n": self.n, "A": format_scalar(self.A), "s": self.s}

    @classmethod
    def from_json(cls, obj: dict) -> GCVOrbit:
        return cls(int(obj["n"]), parse_scalar(obj["A"]), int(obj["s"]))

    def label(self) -> str:
        return f"v(A={format_scalar(self.A) if is_exact(self.A) else mpmath.nstr(self.A, 6)}, s={self.s})"


def orbit_size(o: GCVOrbit) -> int:
    if o.is_corner:
        return 2 ** (o.s + 1) * comb(o.n, o.s + 1)
    return 2 ** (o.s + 1) * o.n * comb(o.n - 1, o.s)


def class_arrangements(o: GCVOrbit):
    """Distinct placements of the coordinate classes, as tuples of class codes."""
    n, s = o.n, o.s
    if o.is_corner:
        for support in itertools.combinations(range(n), s + 1):
            codes = [ZERO] * n
            for i in support:
                codes[i] = TAIL
            yield tuple(codes)
        return
    for head in range(n):
        rest = [i for i in range(n) if i != head]
        for tails in itertools.combinations(rest, s):
            codes = [ZERO] * n
            codes[head] = HEAD
            for i in tails:
                codes[i] = TAIL
            yield tuple(codes)


def _signed_codes(o: GCVOrbit, cap: int):
    size = orbit_size(o)
    if size > cap:
        raise CapExceededError(f"orbit of size {size} exceeds cap {cap}")
    out = []
    for codes in class_arrangements(o):
        support = [i for i, c in enumerate(codes) if c != ZERO]
        for signs in itertools.product((1, -1), repeat=len(support)):
            signed = list(codes)
            for i, sg in zip(support, signs):
                signed[i] = sg * codes[i]
            out.append(tuple(signed))
    out.sort()
    return out


def enumerate_orbit(o: GCVOrbit, mode: str = "exact", cap: int = DEFAULT_CAP, bits: int = DEFAULT_BITS):
    """All points of the orbit in lexicographic order of their signed class codes.

    ``mode="exact"`` yields ``(signs, squares)`` pairs; ``mode="float"`` yields
    tuples of ``mpf`` coordinates.
    """
    coded = _signed_codes(o, cap)
    if mode == "exact":
        values = {ZERO: Fraction(0), TAIL: o.tail_sq, HEAD: o.head_sq}
        return [
            (tuple((c > 0) - (c < 0) for c in pt), tuple(values[abs(c)] for c in pt))
            for pt in coded
        ]
    if mode == "float":
        with mpmath.workprec(bits):
            head = mpmath.sqrt(to_float(o.head_sq, bits))
            tail = mpmath.sqrt(to_float(o.tail_sq, bits))
            values = {ZERO: mpmath.mpf(0), TAIL: tail, HEAD: head}
            return [tuple((1 if c > 0 else -1) * values[abs(c)] for c in pt) for pt in coded]
    raise ValueError(f"unknown mode {mode!r}")


def canonical_rep(o: GCVOrbit, mode: str = "exact", bits: int = DEFAULT_BITS):
    """The representative ``(a, 1, ..., 1, 0, ..., 0)/sqrt(A+s)``."""
    n, s = o.n, o.s
    first = o.tail_sq if o.is_corner else o.head_sq
    squares = (first,) + (o.tail_sq,) * s + (Fraction(0),) * (n - 1 - s)
    signs = (1,) * (s + 1) + (0,) * (n - 1 - s)
    if mode == "exact":
        return signs, squares
    with mpmath.workprec(bits):
        return tuple(mpmath.sqrt(to_float(q, bits)) if sg else mpmath.mpf(0) for sg, q in zip(signs, squares))


def point_to_float(point, bits: int = DEFAULT_BITS):
    """Coordinates of an exact ``(signs, squares)`` point as ``mpf`` values."""
    signs, squares = point
    with mpmath.workprec(bits):
        return tuple(sg * mpmath.sqrt(to_float(q, bits)) for sg, q in zip(signs, squares))
