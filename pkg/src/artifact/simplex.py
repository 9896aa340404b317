"""Cubature on the simplex ``T^{n-1}`` with the Chebyshev-type weight, and its
correspondence with sign-symmetric cubature on ``S^{n-1}``.

A sphere point ``x`` maps to the node ``(x_1^2, ..., x_{n-1}^2)``; the last
squared coordinate is ``1 - |z|_1``.  Nodes are stored as exact squared
coordinates, so no square roots are taken in either direction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .design import FLOAT_RESIDUAL_TOL, PAIRS, WeightedDesign
from .moments import simplex_moment
from .orbits import HEAD, TAIL, ZERO, GCVOrbit, class_arrangements
from .scalars import DEFAULT_BITS, display, format_scalar, is_exact, parse_scalar, to_float


_FLOAT_SLACK = mpmath.mpf(2) ** -100


class NonSymmetricInputError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexCubature:
    n: int
    nodes: tuple[tuple, ...]
    weights: tuple
    degree: int | None = None

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("one weight per node")
        for z in self.nodes:
            if len(z) != self.n - 1:
                raise ValueError(f"nodes must have {self.n - 1} coordinates")
            slack = 0 if all(is_exact(c) for c in z) else _FLOAT_SLACK
            if any(c < 0 for c in z) or sum(z) - 1 > slack:
                raise ValueError(f"node {z} lies outside the simplex")

    def as_dict(self) -> dict:
        return dict(zip(self.nodes, self.weights))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "nodes": [[format_scalar(c) for c in z] for z in self.nodes],
            "weights": [format_scalar(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> SimplexCubature:
        return cls(
            int(obj["n"]),
            tuple(tuple(parse_scalar(c) for c in z) for z in obj["nodes"]),
            tuple(parse_scalar(w) for w in obj["weights"]),
            obj.get("degree"),
        )


def _orbit_images(o: GCVOrbit):
    """Squared-coordinate vectors of the orbit with the number of sign copies of each."""
    values = {ZERO: Fraction(0) if is_exact(o.A) else mpmath.mpf(0), TAIL: o.tail_sq, HEAD: o.head_sq}
    for codes in class_arrangements(o):
        squares = tuple(values[c] for c in codes)
        support = sum(1 for c in codes if c != ZERO)
        yield squares, 2**support


def _aggregate(pairs, n: int, degree) -> SimplexCubature:
    acc: dict = {}
    for squares, w in pairs:
        node = tuple(squares[: n - 1])
        acc[node] = acc.get(node, 0) + w
    nodes = sorted(acc, key=lambda z: tuple(float(c) for c in z), reverse=True)
    return SimplexCubature(n, tuple(nodes), tuple(acc[z] for z in nodes), degree)


def _check_symmetric(points):
    # points: list of (signs, squares, weight); every sign flip of the support must carry equal weight
    table = {(sg, sq): w for sg, sq, w in points}
    for sg, sq, w in points:
        for i, s in enumerate(sg):
            if s == 0:
                continue
            flipped = sg[:i] + (-s,) + sg[i + 1 :]
            if table.get((flipped, sq)) != w:
                raise NonSymmetricInputError(f"point {sg} lacks its sign image in coordinate {i}")


def sphere_to_simplex(source, t_sphere: int, bits: int = DEFAULT_BITS) -> SimplexCubature:
    """Push a sign-symmetric sphere rule of odd degree ``t_sphere`` to the simplex.

    ``source`` is a :class:`WeightedDesign` or a list of
    ``((signs, squares), weight)`` points.  Coinciding images add their
    weights.  The resulting rule claims degree ``(t_sphere - 1) / 2``.
    """
    if t_sphere % 2 != 1:
        raise ValueError("sphere degree must be odd")
    degree = (t_sphere - 1) // 2
    if isinstance(source, WeightedDesign):
        pairs = []
        with mpmath.workprec(bits):
            for o, W in source.orbits:
                point_weight = W / 2 if source.convention == PAIRS else W
                pairs.extend((sq, point_weight * copies) for sq, copies in _orbit_images(o))
            return _aggregate(pairs, source.n, degree)
    points = [(tuple(sg), tuple(sq), w) for (sg, sq), w in source]
    if not points:
        raise ValueError("empty point set")
    _check_symmetric(points)
    n = len(points[0][1])
    return _aggregate(((sq, w) for _, sq, w in points), n, degree)


def simplex_to_sphere(sc: SimplexCubature):
    """Lift every node to its ``2^wt`` signed sphere points with weight ``c / 2^wt``.

    Returns ``((signs, squares), weight)`` pairs in the exact point format.
    """
    out = []
    for z, c in zip(sc.nodes, sc.weights):
        squares = tuple(z) + (1 - sum(z),)
        support = [i for i, q in enumerate(squares) if q != 0]
        w = c / 2 ** len(support)
        for signs in itertools.product((1, -1), repeat=len(support)):
            sg = [0] * sc.n
            for i, s in zip(support, signs):
                sg[i] = s
            out.append(((tuple(sg), squares), w))
    return out


@dataclass
class SimplexReport:
    requested: int
    max_degree: int
    verified: bool
    failing: tuple | None = None
    residuals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "requested": self.requested,
            "max_degree": self.max_degree,
            "verified": self.verified,
            "residuals": {str(k): display(v) for k, v in sorted(self.residuals.items())},
        }
        if self.failing:
            out["failing"] = {"alpha": self.failing[0], "residual": display(self.failing[1])}
        return out


def _exponents(m: int, degree: int):
    for combo in itertools.combinations_with_replacement(range(m), degree):
        alpha = [0] * m
        for i in combo:
            alpha[i] += 1
        yield tuple(alpha)


def simplex_residual(sc: SimplexCubature, alpha):
    acc = -simplex_moment(sc.n, alpha)
    if not all(is_exact(w) for w in sc.weights):
        acc = to_float(acc, mpmath.mp.prec)
    for z, c in zip(sc.nodes, sc.weights):
        term = c
        for x, e in zip(z, alpha):
            if e:
                term = term * x**e
        acc = acc + term
    return acc


def verify_simplex_cubature(
    sc: SimplexCubature, t: int, tol: float = FLOAT_RESIDUAL_TOL, bits: int = DEFAULT_BITS
) -> SimplexReport:
    """Check ``sum c z^alpha`` against the weighted simplex moment for every ``|alpha| <= t``."""
    exact = all(is_exact(w) for w in sc.weights) and all(is_exact(c) for z in sc.nodes for c in z)
    failing = None
    residuals = {}
    with mpmath.workprec(bits):
        data = sc
        if not exact:
            data = SimplexCubature(
                sc.n,
                tuple(tuple(to_float(c, bits) for c in z) for z in sc.nodes),
                tuple(to_float(w, bits) for w in sc.weights),
                sc.degree,
            )
        for degree in range(t + 1):
            worst = 0
            for alpha in _exponents(sc.n - 1, degree):
                r = simplex_residual(data, alpha)
                worst = r if abs(r) > abs(worst) else worst
                bad = r != 0 if exact else abs(r) > tol
                if bad and failing is None:
                    failing = (alpha, r)
            residuals[degree] = worst
            if failing is not None:
                break
    max_degree = t if failing is None else sum(failing[0]) - 1
    return SimplexReport(t, max_degree, failing is None, failing, residuals)


# ---------------------------------------------------------------- placement of orbit images


@dataclass(frozen=True)
class Placement:
    kind: str  # vertex-set | boundary | median | interior
    facets: tuple[int, ...]
    on_medians: bool
    nodes: tuple[tuple, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "facets": list(self.facets),
            "on_medians": self.on_medians,
            "nodes": [[format_scalar(c) for c in z] for z in self.nodes],
        }


def boundary_classify(o: GCVOrbit) -> Placement:
    """Where the simplex image of an orbit sits.

    Facet ``i < n-1`` is the hyperplane ``z_i = 0`` and facet ``n-1`` is
    ``|z|_1 = 1``.  With ``s <= n-2`` every image point has a zero squared
    coordinate, so it lies on a facet.  With ``s = n-1`` all points have
    ``n-1`` equal barycentric coordinates, i.e. they lie on medians; in
    dimension 3 this is the whole story, otherwise they are interior.
    """
    images = [sq for sq, _ in _orbit_images(o)]
    nodes = sorted({tuple(sq[: o.n - 1]) for sq in images}, key=lambda z: tuple(float(c) for c in z), reverse=True)
    facets = sorted({i for sq in images for i, q in enumerate(sq) if q == 0})
    on_medians = o.s == o.n - 1
    if o.s == 0:
        kind = "vertex-set"
    elif o.s <= o.n - 2:
        kind = "boundary"
    elif o.n == 3:
        kind = "median"
    else:
        kind = "interior"
    return Placement(kind, tuple(facets), on_medians, tuple(nodes))


def boundary_polynomial_integral(n: int) -> Fraction:
    """Weighted simplex average of ``z_1 ... z_{n-1} (1 - |z|_1)``; it is positive."""
    ones = (1,) * (n - 1)
    total = simplex_moment(n, ones)
    for j in range(n - 1):
        alpha = list(ones)
        alpha[j] += 1
        total -= simplex_moment(n, tuple(alpha))
    return total


def boundary_polynomial_sum(sc: SimplexCubature):
    """The rule applied to ``z_1 ... z_{n-1} (1 - |z|_1)``; zero when every node is on a facet."""
    total = 0
    for z, c in zip(sc.nodes, sc.weights):
        val = c * (1 - sum(z))
        for x in z:
            val = val * x
        total = total + val
    return total
