"""Weighted designs built from generalized corner-vector orbits.

A design is a list of ``(orbit, W)`` pairs; every point of an orbit carries
weight ``W``.  Under the ``antipodal-pairs`` convention ``W`` is the weight of
each antipodal pair, so an orbit contributes ``W * size/2`` to the total mass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .harmonics import InvariantId, applicable_invariants, invariant_value
from .moments import even_partitions, orbit_moment, sphere_moment
from .orbits import GCVOrbit, orbit_size
from .scalars import DEFAULT_BITS, display, format_scalar, is_exact, parse_scalar, scalar_sign, to_float

FULL = "full-orbit"
PAIRS = "antipodal-pairs"

FLOAT_RESIDUAL_TOL = 1e-10
FLOAT_SIGN_TOL = 1e-7


@dataclass(frozen=True)
class WeightedDesign:
    n: int
    orbits: tuple[tuple[GCVOrbit, object], ...]
    convention: str = FULL

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple((o, w) for o, w in self.orbits))
        if self.convention not in (FULL, PAIRS):
            raise ValueError(f"unknown counting convention {self.convention!r}")
        for o, w in self.orbits:
            if o.n != self.n:
                raise ValueError("all orbits must share the design dimension")
            if scalar_sign(w) != 1:
                raise ValueError(f"weight {w} is not positive")

    @property
    def is_exact(self) -> bool:
        return all(is_exact(o.A) and is_exact(w) for o, w in self.orbits)

    def effective_size(self, o: GCVOrbit) -> int:
        size = orbit_size(o)
        return size // 2 if self.convention == PAIRS else size

    def scaled_weights(self) -> list:
        """``W_i * |orbit_i|_eff``: the share of total mass carried by each orbit."""
        return [w * self.effective_size(o) for o, w in self.orbits]

    def mass(self):
        return sum(self.scaled_weights(), Fraction(0))

    def to_float(self, bits: int = DEFAULT_BITS) -> WeightedDesign:
        return WeightedDesign(
            self.n,
            tuple((GCVOrbit(o.n, to_float(o.A, bits), o.s), to_float(w, bits)) for o, w in self.orbits),
            self.convention,
        )

    def with_convention(self, convention: str) -> WeightedDesign:
        """Same point weights expressed under another convention."""
        if convention == self.convention:
            return self
        factor = 2 if convention == PAIRS else Fraction(1, 2)
        return WeightedDesign(self.n, tuple((o, w * factor) for o, w in self.orbits), convention)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "convention": self.convention,
            "orbits": [{"A": format_scalar(o.A), "s": o.s, "W": format_scalar(w)} for o, w in self.orbits],
        }

    @classmethod
    def from_json(cls, obj: dict) -> WeightedDesign:
        n = int(obj["n"])
        orbits = []
        for item in obj["orbits"]:
            if "A" in item:
                A = parse_scalar(item["A"])
            else:
                a = parse_scalar(item["a"])
                A = a * a
            orbits.append((GCVOrbit(n, A, int(item["s"])), parse_scalar(item["W"])))
        return cls(n, tuple(orbits), obj.get("convention", FULL))


@dataclass
class VerificationReport:
    requested: int
    max_degree: int
    verified: bool
    exact: bool
    path: str
    residuals: dict = field(default_factory=dict)
    failing: tuple | None = None

    @property
    def worst_residual(self):
        vals = [abs(r) for r in self.residuals.values()]
        return max(vals) if vals else 0

    def summary(self) -> str:
        if self.failing is None:
            return f"verified degree {self.max_degree}"
        return f"verified degree {self.max_degree}, fails {self.max_degree + 1}"

    def to_json(self) -> dict:
        out = {
            "requested": self.requested,
            "max_degree": self.max_degree,
            "verified": self.verified,
            "exact": self.exact,
            "path": self.path,
            "residuals": {str(k): display(v) for k, v in sorted(self.residuals.items())},
            "summary": self.summary(),
        }
        if self.failing:
            deg, label, res = self.failing
            out["failing"] = {"degree": deg, "at": label, "residual": display(res)}
        return out


def _prepare(d: WeightedDesign, mode: str, bits: int) -> WeightedDesign:
    if mode == "exact":
        if not d.is_exact:
            raise ValueError("exact verification needs exact parameters")
        return d
    if mode == "float":
        return d.to_float(bits)
    raise ValueError(f"unknown mode {mode!r}")


def _is_zero(x, mode: str, tol) -> bool:
    return x == 0 if mode == "exact" else abs(x) <= tol


def moment_residual(d: WeightedDesign, lam):
    """``sum_i W_i |orbit_i|_eff mu_i(lam) - sphere_moment(lam)``."""
    acc = -sphere_moment(d.n, lam)
    if not d.is_exact:
        acc = to_float(acc, mpmath.mp.prec)
    for (o, _), wt in zip(d.orbits, d.scaled_weights()):
        acc = acc + wt * orbit_moment(o, lam)
    return acc


def harmonic_residual(d: WeightedDesign, inv: InvariantId):
    acc = Fraction(0)
    for (o, _), wt in zip(d.orbits, d.scaled_weights()):
        acc = acc + wt * invariant_value(inv, o)
    return acc


def _degree_checks(d: WeightedDesign, degree: int, path: str):
    """Yield (label, residual) for every condition at one even degree."""
    if degree == 0:
        yield "mass", d.mass() - 1
        return
    if path == "moment":
        for lam in even_partitions(d.n, degree):
            yield lam, moment_residual(d, lam)
    else:
        for inv in applicable_invariants(d.n, degree):
            yield inv.label, harmonic_residual(d, inv)


def verify_design(
    d: WeightedDesign,
    t: int,
    mode: str = "exact",
    tol: float = FLOAT_RESIDUAL_TOL,
    bits: int = DEFAULT_BITS,
    path: str = "auto",
) -> VerificationReport:
    """Check that ``d`` integrates every polynomial of degree at most ``t`` exactly.

    Odd degrees vanish on both sides by central symmetry.  ``path="harmonic"``
    tests the invariant harmonics instead of all monomials and needs
    ``t <= 11`` and ``n >= 3``; ``"auto"`` picks it whenever it applies.
    """
    if t < 0:
        raise ValueError("degree must be nonnegative")
    harmonic_ok = t <= 11 and d.n >= 3
    if path == "auto":
        path = "harmonic" if harmonic_ok else "moment"
    if path == "harmonic" and not harmonic_ok:
        raise ValueError("harmonic path needs t <= 11 and n >= 3")
    with mpmath.workprec(bits):
        dd = _prepare(d, mode, bits)
        residuals = {}
        failing = None
        for degree in range(0, t + 1, 2):
            worst = Fraction(0) if mode == "exact" else mpmath.mpf(0)
            for label, res in _degree_checks(dd, degree, path):
                if abs(res) > abs(worst):
                    worst = res
                if failing is None and not _is_zero(res, mode, tol):
                    failing = (degree, label, res)
            residuals[degree] = worst
    max_degree = t if failing is None else failing[0] - 1
    return VerificationReport(t, max_degree, failing is None, mode == "exact", path, residuals, failing)


# ---------------------------------------------------------------- weights


@dataclass
class SolveResult:
    status: str  # feasible | infeasible | nonpositive | underdetermined
    weights: list | None = None
    scaled_weights: list | None = None
    detail: str = ""

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _system(orbits: list[GCVOrbit], t: int):
    n = orbits[0].n
    rows = []
    if t <= 11 and n >= 3:
        rows.append(("mass", [Fraction(1)] * len(orbits), Fraction(1)))
        for degree in range(4, t + 1, 2):
            for inv in applicable_invariants(n, degree):
                rows.append((inv.label, [invariant_value(inv, o) for o in orbits], Fraction(0)))
    else:
        for degree in range(0, t + 1, 2):
            for lam in even_partitions(n, degree):
                rows.append((str(lam), [orbit_moment(o, lam) for o in orbits], sphere_moment(n, lam)))
    return rows


def solve_weights(
    orbits: list[GCVOrbit],
    t: int,
    convention: str = FULL,
    tol: float = FLOAT_SIGN_TOL,
) -> SolveResult:
    """Row-reduce the moment system for the mass shares ``W~_i`` and convert them to weights.

    Rows are ordered by degree and pivots are taken from the lowest-degree
    row available, so an inconsistency is reported at the first degree
    where it appears.
    """
    if not orbits:
        raise ValueError("need at least one orbit")
    exact = all(is_exact(o.A) for o in orbits)
    zero = (lambda x: x == 0) if exact else (lambda x: abs(x) <= tol)
    rows = [(label, list(coeffs), rhs) for label, coeffs, rhs in _system(orbits, t)]
    k = len(orbits)
    pivots: list[tuple[int, int]] = []
    used = set()
    for col in range(k):
        piv = next((i for i, r in enumerate(rows) if i not in used and not zero(r[1][col])), None)
        if piv is None:
            continue
        used.add(piv)
        pivots.append((piv, col))
        plabel, prow, prhs = rows[piv]
        inv = 1 / prow[col]
        prow = [c * inv for c in prow]
        prhs = prhs * inv
        rows[piv] = (plabel, prow, prhs)
        for i, (label, row, rhs) in enumerate(rows):
            if i == piv or zero(row[col]):
                continue
            f = row[col]
            rows[i] = (label, [a - f * b for a, b in zip(row, prow)], rhs - f * prhs)
    for i, (label, row, rhs) in enumerate(rows):
        if i not in used and not zero(rhs):
            return SolveResult("infeasible", detail=f"row {label} leaves residual {display(rhs)}")
    if len(pivots) < k:
        return SolveResult("underdetermined", detail=f"rank {len(pivots)} < {k} orbits")
    scaled = [None] * k
    for piv, col in pivots:
        scaled[col] = rows[piv][2]
    for i, w in enumerate(scaled):
        if scalar_sign(w, 0 if exact else tol) != 1:
            return SolveResult("nonpositive", scaled_weights=scaled, detail=f"orbit {i} gets share {display(w)}")
    weights = []
    for o, w in zip(orbits, scaled):
        size = orbit_size(o) // (2 if convention == PAIRS else 1)
        weights.append(w / size)
    return SolveResult("feasible", weights, scaled)


def design_from_shares(orbits: list[GCVOrbit], shares: list, convention: str = FULL) -> WeightedDesign:
    n = orbits[0].n
    out = []
    for o, w in zip(orbits, shares):
        size = orbit_size(o) // (2 if convention == PAIRS else 1)
        out.append((o, w / size))
    return WeightedDesign(n, tuple(out), convention)


# ---------------------------------------------------------------- two-orbit classification


def g_function(first: InvariantId, second: InvariantId, o1: GCVOrbit, o2: GCVOrbit):
    """``f(v1) g(v2) - g(v1) f(v2)`` for the invariants ``f = first`` and ``g = second``."""
    return invariant_value(first, o1) * invariant_value(second, o2) - invariant_value(second, o1) * invariant_value(
        first, o2
    )


@dataclass
class Classification:
    case: str  # case-i ... case-v or none
    scaled_weights: tuple | None = None
    impossible: bool = False
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "scaled_weights": None if self.scaled_weights is None else [display(w) for w in self.scaled_weights],
            "impossible": self.impossible,
            "values": {k: [display(v) for v in vs] for k, vs in self.values.items()},
        }


def _two_point_shares(f1, f2):
    # solves W1 + W2 = 1, W1 f1 + W2 f2 = 0
    den = f2 - f1
    return (f2 / den, -f1 / den)


def _sign_tol(o1: GCVOrbit, o2: GCVOrbit, tol):
    if tol is not None:
        return tol
    return 0 if is_exact(o1.A) and is_exact(o2.A) else FLOAT_SIGN_TOL


def classify_7(o1: GCVOrbit, o2: GCVOrbit, tol=None) -> Classification:
    """Decide which of the three two-orbit 7-design cases holds, with the matching shares."""
    if o1.n != o2.n or o1.n < 3:
        raise ValueError("orbits must share a dimension n >= 3")
    tol = _sign_tol(o1, o2, tol)
    f4 = (invariant_value(InvariantId.F4, o1), invariant_value(InvariantId.F4, o2))
    f6 = (invariant_value(InvariantId.F6, o1), invariant_value(InvariantId.F6, o2))
    values = {"F4": f4, "F6": f6}
    if o1 == o2:
        return Classification("none", values=values)
    sg = lambda x: scalar_sign(x, tol)  # noqa: E731
    g46 = f4[0] * f6[1] - f6[0] * f4[1]
    values["G46"] = (g46,)
    if sg(f4[0]) * sg(f4[1]) < 0 and sg(g46) == 0:
        return Classification("case-i", _two_point_shares(*f4), values=values)
    if sg(f4[0]) == sg(f4[1]) == 0:
        if sg(f6[0]) * sg(f6[1]) < 0:
            return Classification("case-ii", _two_point_shares(*f6), values=values)
        if sg(f6[0]) == sg(f6[1]) == 0:
            # every split of the mass works; report the even one
            return Classification("case-iii", (Fraction(1, 2), Fraction(1, 2)), o1.s != o2.s, values)
    return Classification("none", values=values)


def classify_9(o1: GCVOrbit, o2: GCVOrbit, tol=None) -> Classification:
    """Decide which of the five two-orbit 9-design cases holds.

    In dimension 3 the invariant of type (8,2) does not exist and its
    conditions drop out.  Cases iii to v are reported as impossible.
    """
    if o1.n != o2.n or o1.n < 3:
        raise ValueError("orbits must share a dimension n >= 3")
    tol = _sign_tol(o1, o2, tol)
    has82 = o1.n >= 4
    ids = [InvariantId.F4, InvariantId.F6, InvariantId.F81] + ([InvariantId.F82] if has82 else [])
    vals = {inv.label: (invariant_value(inv, o1), invariant_value(inv, o2)) for inv in ids}
    if o1 == o2:
        return Classification("none", values=vals)
    sg = lambda x: scalar_sign(x, tol)  # noqa: E731

    def opposite(label):
        a, b = vals[label]
        return sg(a) * sg(b) < 0

    def both_zero(label):
        a, b = vals[label]
        return sg(a) == 0 and sg(b) == 0

    def g_zero(f, g):
        return sg(vals[f][0] * vals[g][1] - vals[g][0] * vals[f][1]) == 0

    eights = ["F81"] + (["F82"] if has82 else [])
    if opposite("F4") and g_zero("F4", "F6") and all(g_zero("F4", e) for e in eights):
        return Classification("case-i", _two_point_shares(*vals["F4"]), values=vals)
    if both_zero("F4") and opposite("F6") and all(g_zero("F6", e) for e in eights):
        return Classification("case-ii", _two_point_shares(*vals["F6"]), values=vals)
    if both_zero("F4") and both_zero("F6"):
        if opposite("F81") and (not has82 or g_zero("F81", "F82")):
            return Classification("case-iii", _two_point_shares(*vals["F81"]), True, vals)
        if both_zero("F81"):
            if has82 and opposite("F82"):
                return Classification("case-iv", _two_point_shares(*vals["F82"]), True, vals)
            if not has82 or both_zero("F82"):
                return Classification("case-v", (Fraction(1, 2), Fraction(1, 2)), True, vals)
    return Classification("none", values=vals)


# ---------------------------------------------------------------- bounds


def degree_upper_bound(n: int, s_list: list[int]) -> int:
    """Largest degree a design built from orbits with these tail lengths can reach.

    Follows the regimes of the bound table: a tail of length at least 3
    gives 15 (17 in dimension 3); otherwise the facet argument gives
    ``2n - 1`` and, from dimension 8 on, the degree-8 invariant gives 7.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if any(not 0 <= s <= n - 1 for s in s_list):
        raise ValueError("tail lengths must lie in [0, n-1]")
    if n == 3:
        return 17
    if any(s >= 3 for s in s_list):
        return 15
    bounds = [15]
    if n >= 8:
        bounds.append(7)
    if all(s <= n - 2 for s in s_list):
        # every orbit meets a facet of the simplex image
        bounds.append(2 * n - 1)
    return min(bounds)


def cross_ratio_check(d: WeightedDesign):
    """``sum W_i 2^s_i C(n-4, s_i-3) A_i (A_i-1)^2`` over orbits with ``s_i >= 3``.

    A positive value rules out degree 16 and above.
    """
    if d.n < 4:
        raise ValueError("cross-ratio diagnostic needs n >= 4")
    total = Fraction(0)
    for o, w in d.orbits:
        if o.s >= 3:
            total = total + w * 2**o.s * comb(d.n - 4, o.s - 3) * o.A * (o.A - 1) ** 2
    return total
