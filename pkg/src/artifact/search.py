"""Parameter searches: single-orbit 7-designs, curve points, the two-orbit
cubic, case eliminations, and Newton refinement of numeric designs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .design import FULL, WeightedDesign, moment_residual, verify_design
from .harmonics import InvariantId, eval_invariant_closed
from .moments import even_partitions, orbit_moment, orbit_moment_dA, sphere_moment
from .orbits import GCVOrbit, orbit_size
from .scalars import DEFAULT_BITS, display, format_scalar, is_exact, make_surd, scalar_sign, to_float


@dataclass
class SearchResult:
    hits: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    examined: int = 0

    def to_json(self) -> dict:
        return {
            "hits": [
                {k: (format_scalar(v) if k == "A" else v) for k, v in h.items()} for h in self.hits
            ],
            "bounds": self.bounds,
            "examined": self.examined,
        }


# ---------------------------------------------------------------- single orbit 7-designs


def single_orbit_terms(n: int, s: int) -> tuple[int, int, int]:
    """Integers ``(P, Q, D)`` with ``h_pm = P pm Q*sqrt(D)`` and ``D = (2+n)s(1-n+3s)``."""
    P = n**3 + (2 - 9 * s) * n**2 + (-7 - 9 * s + 12 * s * s) * n + 6 * s * s + 18 * s + 4
    Q = n * n - 3 * (s - 2) * n - 3 * s - 7
    D = (2 + n) * s * (1 - n + 3 * s)
    return P, Q, D


def _h_vanishes(P: int, Q: int, D: int, sign: int) -> bool:
    # P + sign*Q*sqrt(D) == 0  <=>  P^2 == Q^2 D with sign(P) == -sign*sign(Q), or P == Q == 0
    if D == 0 or Q == 0:
        return P == 0
    if P == 0:
        return False
    return P * P == Q * Q * D and (P > 0) != (sign * Q > 0)


def single_orbit_A(n: int, s: int, sign: int):
    """``(3s + sign*sqrt(D))/(n-1)``, the roots of the degree-4 condition."""
    _, _, D = single_orbit_terms(n, s)
    return make_surd(3 * s, sign, D, n - 1)


def search_single_orbit_7(n_max: int) -> SearchResult:
    """All ``(n, s, A)`` for which the single orbit ``v_{a,s}`` carries a 7-design.

    Each hit is certified exactly: the degree-4 and degree-6 invariants vanish
    at the emitted ``A``.
    """
    result = SearchResult(bounds={"n_max": n_max})
    for n in range(3, n_max + 1):
        for s in range(1, n):
            result.examined += 1
            P, Q, D = single_orbit_terms(n, s)
            if D < 0:
                continue
            for sign in (1, -1):
                if not _h_vanishes(P, Q, D, sign):
                    continue
                for branch in (1, -1):
                    A = single_orbit_A(n, s, branch)
                    if scalar_sign(A) != 1:
                        continue
                    o = GCVOrbit(n, A, s)
                    if eval_invariant_closed(InvariantId.F4, o) == 0 and eval_invariant_closed(InvariantId.F6, o) == 0:
                        hit = {"n": n, "s": s, "A": A, "certificate": ["F4", "F6"]}
                        if hit not in result.hits:
                            result.hits.append(hit)
    result.hits.sort(key=lambda h: (h["n"], h["s"]))
    return result


def single_orbit_design(n: int, s: int, A) -> WeightedDesign:
    o = GCVOrbit(n, A, s)
    return WeightedDesign(n, ((o, Fraction(1, orbit_size(o))),), FULL)


def square_test_solutions() -> list[tuple[int, int]]:
    """Every integer ``(s, m)`` with ``s >= 0`` and ``9s^2 - 24s + 64 = m^2``.

    Rewriting as ``(m - (3s-4))(m + (3s-4)) = 48`` leaves finitely many
    factorizations, so the list is complete.
    """
    out = set()
    for d in range(1, 49):
        if 48 % d:
            continue
        for sd in (d, -d):
            e = 48 // sd
            if (sd + e) % 2:
                continue
            m = (sd + e) // 2
            u = (e - sd) // 2  # 3s - 4
            if (u + 4) % 3 == 0:
                s = (u + 4) // 3
                if s >= 0:
                    out.add((s, m))
    return sorted(out)


# ---------------------------------------------------------------- curve


def curve_f(x: int, y: int) -> int:
    return (
        x**4
        + (6 - 9 * y) * x**3
        + (27 * y * y - 30 * y + 1) * x**2
        - (27 * y**3 - 54 * y * y - 9 * y + 24) * x
        - 18 * y**3
        - 36 * y * y
        + 30 * y
        + 16
    )


def curve_integer_points(x_max: int, y_max: int, x_min: int = 0, y_min: int = 0) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x in range(x_min, x_max + 1)
        for y in range(y_min, y_max + 1)
        if curve_f(x, y) == 0
    ]


# ---------------------------------------------------------------- two-orbit cubic


def tanino_cubic(n: int, s1: int, s2: int) -> int:
    return (
        3 * n**3
        + (10 - 9 * s1 - 9 * s2) * n**2
        - 3 * (1 + 6 * s1 + 6 * s2 - 3 * s1 * s1 - 3 * s1 * s2 - 3 * s2 * s2) * n
        - 10
        + 12 * s1
        + 12 * s2
        + 6 * s1 * s1
        + 6 * s1 * s2
        + 6 * s2 * s2
    )


def tanino_scan(s_max: int, distinct_only: bool = False) -> list[tuple[int, int, int]]:
    """Integer solutions ``(n, s1, s2)`` with ``n >= 1`` and ``0 <= s1 <= s2 <= s_max``.

    Candidate roots come from the real roots of the cubic in ``n``; each is
    confirmed by exact substitution.  With ``s1 == s2`` the cubic factors as
    ``(3s - 1 - n)(-3n^2 + 9ns - 7n + 6s + 10)``, so the diagonal contributes
    ``n = 3s - 1`` for every ``s >= 1``.  ``distinct_only`` keeps ``s1 != s2``.
    """
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    hits = []
    for s1 in range(0, s_max + 1):
        s2 = np.arange(s1, s_max + 1, dtype=np.float64)
        c3 = np.full_like(s2, 3.0)
        c2 = 10 - 9 * s1 - 9 * s2
        c1 = -3 * (1 + 6 * s1 + 6 * s2 - 3 * s1 * s1 - 3 * s1 * s2 - 3 * s2 * s2)
        c0 = -10 + 12 * s1 + 12 * s2 + 6 * s1 * s1 + 6 * s1 * s2 + 6 * s2 * s2
        comp = np.zeros((len(s2), 3, 3))
        comp[:, 0, :] = -np.stack([c2 / c3, c1 / c3, c0 / c3], axis=1)
        comp[:, 1, 0] = 1.0
        comp[:, 2, 1] = 1.0
        roots = np.linalg.eigvals(comp)
        for idx in range(len(s2)):
            for r in roots[idx]:
                if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)) or r.real < 0.5:
                    continue
                base = int(round(r.real))
                for cand in (base - 1, base, base + 1):
                    if cand >= 1 and tanino_cubic(cand, s1, s1 + idx) == 0:
                        hit = (cand, s1, s1 + idx)
                        if hit[2] > max(cand - 1, 0):
                            continue  # tail longer than the dimension allows
                        if distinct_only and hit[1] == hit[2]:
                            continue
                        if hit not in hits:
                            hits.append(hit)
    return sorted(hits, reverse=True)


# ---------------------------------------------------------------- single orbit 9-design quartic


def nine_design_quartic(n: int) -> int:
    return -277504 - 32752 * n - 1412 * n**2 - 200 * n**3 + 3 * n**4


def quartic_integer_roots(n_max: int) -> list[int]:
    """Integer roots of the quartic in ``[1, n_max]`` by exhaustive exact evaluation."""
    return [n for n in range(1, n_max + 1) if nine_design_quartic(n) == 0]


def quartic_integer_roots_complete() -> list[int]:
    """All integer roots, using that any integer root divides the constant term."""
    c0 = 277504
    out = []
    for d in range(1, c0 + 1):
        if c0 % d == 0:
            for r in (d, -d):
                if nine_design_quartic(r) == 0:
                    out.append(r)
    return sorted(out)


# ---------------------------------------------------------------- two-orbit eliminations


def admissible_s_range(n: int) -> tuple[Fraction, Fraction]:
    num = 5 * n * n + 15 * n - 20
    return Fraction(num, 12 * n + 6), Fraction(num, 9 * n + 12)


def admissible_s_values(n: int) -> list[int]:
    lo, hi = admissible_s_range(n)
    first = math.floor(lo) + 1
    return [s for s in range(max(first, 1), min(math.floor(hi), n - 1) + 1)]


def case_iii_scan(n_max: int = 691) -> SearchResult:
    """Look for equal-tail pairs with vanishing degree-4 and degree-6 invariants.

    For a fixed ``(n, s)`` the two orbits must be the two roots of the
    degree-4 condition, so each candidate is decided exactly.
    """
    result = SearchResult(bounds={"n_max": n_max})
    for n in range(3, n_max + 1):
        for s in admissible_s_values(n):
            result.examined += 1
            _, _, D = single_orbit_terms(n, s)
            if D <= 0:
                continue
            roots = [single_orbit_A(n, s, 1), single_orbit_A(n, s, -1)]
            if any(scalar_sign(A) != 1 for A in roots):
                continue
            orbits = [GCVOrbit(n, A, s) for A in roots]
            if all(eval_invariant_closed(InvariantId.F6, o) == 0 for o in orbits):
                result.hits.append({"n": n, "s": s, "A": roots[0], "certificate": ["F4", "F6"]})
    return result


def f6_difference_product(n: int, s: int) -> Fraction:
    """``A1*A2`` forced by equal degree-6 values once ``A1 + A2 = 6s/(n-1)``."""
    return Fraction(3 * s * (20 - 5 * n * n + 6 * s + 3 * n * (-5 + 4 * s)), (n - 2) * (n - 1) ** 2)


def six_s_minus_3_product(s: int) -> Fraction:
    """``A1*A2`` on the branch ``n = 6s - 3``; negative for every ``s >= 1``."""
    return Fraction(-3 * s * (-5 - 15 * s + 27 * s * s), (-2 + 3 * s) ** 2 * (-5 + 6 * s))


def g_polynomials(A1, A2, s: int, n: int):
    """The three polynomial conditions ``g1, g2, g3`` in squared head values."""
    g1 = -(A1 + A2) + (A1 + A2) * n - 6 * s
    g2 = (
        -A1**3 - A1**2 * A2 - A1 * A2**2 - A2**3
        + (A1**3 + A1**2 * A2 + A1 * A2**2 + A2**3) * n
        - 28 * s + 70 * A1 * s - 28 * A1**2 * s + 70 * A2 * s - 28 * A1 * A2 * s - 28 * A2**2 * s
    )
    g3 = (
        -18 + 3 * A1 + 3 * A2 - 6 * n + 2 * A1 * n + 2 * A2 * n - A1 * n * n - A2 * n * n
        + 36 * s - 9 * A1 * s - 9 * A2 * s + 6 * n * s + 3 * A1 * n * s + 3 * A2 * n * s - 18 * s * s
    )
    return g1, g2, g3


def f6_difference_expression(A1, A2, s: int, n: int):
    """Left side of the equal-degree-6 condition for a pair with tail ``s``."""
    return (
        (A1**2 + A1 * A2 + A2**2) * (n - 2) * (n - 1)
        - 60 * s
        - 15 * (A1 + A2) * (n - 2) * s
        - 15 * n * s
        + 90 * s * s
    )


def golden_pair() -> tuple:
    """The dimension-3 pair with ``s = 1``: ``A1 = (3 - sqrt 5)/2`` and ``A2 = ((1 + sqrt 5)/2)^2``."""
    A1 = make_surd(3, -1, 5, 2)
    a2 = make_surd(1, 1, 5, 2)
    return A1, a2 * a2


# ---------------------------------------------------------------- Newton refinement


class NoConvergenceError(RuntimeError):
    pass


class NegativeWeightError(RuntimeError):
    pass


def _moment_rows(n: int, t: int):
    return [lam for degree in range(0, t + 1, 2) for lam in even_partitions(n, degree)]


def _residuals(orbits, shares, rows):
    out = []
    for lam in rows:
        acc = -to_float(sphere_moment(orbits[0].n, lam), mpmath.mp.prec)
        for o, w in zip(orbits, shares):
            acc += w * orbit_moment(o, lam)
        out.append(acc)
    return out


def max_moment_residual(d: WeightedDesign, t: int, bits: int = DEFAULT_BITS):
    """Largest absolute moment residual over all even monomials of degree at most ``t``."""
    if d.is_exact:
        return max(abs(moment_residual(d, lam)) for lam in _moment_rows(d.n, t))
    with mpmath.workprec(bits):
        dd = d.to_float(bits)
        res = _residuals([o for o, _ in dd.orbits], dd.scaled_weights(), _moment_rows(d.n, t))
        return max(abs(r) for r in res)


def _pinv_solve(J, r, rcond):
    # minimum-norm least-squares solution of J x = r via the SVD
    U, S, V = mpmath.svd_r(J)
    smax = max(S[i] for i in range(len(S))) if len(S) else 0
    y = mpmath.matrix(V.cols, 1)
    Ut_r = U.T * r
    for i in range(len(S)):
        if S[i] > rcond * smax:
            for j in range(V.cols):
                y[j] += V[i, j] * Ut_r[i] / S[i]
    return y


def least_squares_shares(orbits: list[GCVOrbit], t: int, bits: int = DEFAULT_BITS) -> list:
    """Mass shares minimizing the moment residual with the orbit parameters held fixed."""
    with mpmath.workprec(bits):
        rows = _moment_rows(orbits[0].n, t)
        J = mpmath.matrix(len(rows), len(orbits))
        rhs = mpmath.matrix(len(rows), 1)
        for i, lam in enumerate(rows):
            rhs[i] = to_float(sphere_moment(orbits[0].n, lam), bits)
            for j, o in enumerate(orbits):
                J[i, j] = orbit_moment(o, lam)
        sol = _pinv_solve(J, rhs, mpmath.mpf(2) ** (-bits // 2))
        return [sol[j] for j in range(len(orbits))]


def refine_design(
    d: WeightedDesign,
    t: int,
    target_residual: float = 1e-12,
    bits: int = DEFAULT_BITS,
    max_iter: int = 100,
    fixed: set[int] | None = None,
    resolve_weights: bool = False,
) -> WeightedDesign:
    """Polish a numeric design with Gauss-Newton steps on the moment equations.

    Unknowns are the squared head values ``A_i`` (orbits in ``fixed`` keep
    theirs; by default those with ``A = 1`` exactly) and the weights.  Steps
    are minimum-norm least-squares solutions, damped until the residual
    drops.  ``resolve_weights`` first replaces the weights by the linear
    least-squares fit for the given ``A_i``.
    """
    if fixed is None:
        fixed = {i for i, (o, _) in enumerate(d.orbits) if o.A == 1}
    if d.is_exact and max_moment_residual(d, t, bits) == 0:
        return d
    with mpmath.workprec(bits):
        dd = d.to_float(bits)
        n = d.n
        orbits = [o for o, _ in dd.orbits]
        sizes = [dd.effective_size(o) for o in orbits]
        shares = dd.scaled_weights()
        rows = _moment_rows(n, t)
        if resolve_weights:
            shares = least_squares_shares(orbits, t, bits)
        free = [i for i in range(len(orbits)) if i not in fixed]
        rcond = mpmath.mpf(2) ** (-bits // 2)

        def norm_of(res):
            return max(abs(x) for x in res)

        res = _residuals(orbits, shares, rows)
        current = norm_of(res)
        for _ in range(max_iter):
            if current <= target_residual:
                break
            J = mpmath.matrix(len(rows), len(free) + len(orbits))
            for i, lam in enumerate(rows):
                for c, j in enumerate(free):
                    J[i, c] = shares[j] * orbit_moment_dA(orbits[j], lam)
                for j, o in enumerate(orbits):
                    J[i, len(free) + j] = orbit_moment(o, lam)
            step = _pinv_solve(J, mpmath.matrix(res), rcond)
            lam_step = mpmath.mpf(1)
            accepted = False
            for _ in range(40):
                new_orbits = list(orbits)
                ok = True
                for c, j in enumerate(free):
                    A = orbits[j].A - lam_step * step[c]
                    if A <= 0:
                        ok = False
                        break
                    new_orbits[j] = GCVOrbit(n, A, orbits[j].s)
                new_shares = [shares[j] - lam_step * step[len(free) + j] for j in range(len(orbits))]
                if ok:
                    new_res = _residuals(new_orbits, new_shares, rows)
                    new_norm = norm_of(new_res)
                    if new_norm < current:
                        orbits, shares, res, current = new_orbits, new_shares, new_res, new_norm
                        accepted = True
                        break
                lam_step /= 2
            if not accepted:
                break
        if current > target_residual:
            raise NoConvergenceError(f"residual {display(current)} above target {target_residual}")
        for j, w in enumerate(shares):
            if w <= 0:
                raise NegativeWeightError(f"orbit {j} ended with share {display(w)}")
        return WeightedDesign(
            n, tuple((o, w / size) for o, w, size in zip(orbits, shares, sizes)), d.convention
        )


def random_search(
    n: int,
    s_list: list[int],
    t: int,
    restarts: int = 20,
    seed: int = 0,
    corner: set[int] | None = None,
    a_max: float = 5.0,
    target_residual: float = 1e-12,
    bits: int = 128,
) -> list[WeightedDesign]:
    """Random-restart harness for designs with the given tail lengths.

    Orbits whose index is in ``corner`` are pinned at ``A = 1``.  Returns
    every restart that converged to positive weights.
    """
    corner = corner or set()
    rng = random.Random(seed)
    found = []
    for _ in range(restarts):
        orbits = []
        for i, s in enumerate(s_list):
            A = mpmath.mpf(1) if i in corner else mpmath.mpf(rng.uniform(0.05, a_max)) ** 2
            orbits.append(GCVOrbit(n, A, s))
        shares = least_squares_shares(orbits, t, bits)
        if any(w <= 0 for w in shares):
            continue
        sizes = [orbit_size(o) for o in orbits]
        start = WeightedDesign(n, tuple((o, w / z) for o, w, z in zip(orbits, shares, sizes)))
        try:
            found.append(refine_design(start, t, target_residual, bits=bits, fixed=corner, max_iter=60))
        except (NoConvergenceError, NegativeWeightError):
            continue
    return found


def verify_hit(hit: dict, t: int):
    return verify_design(single_orbit_design(hit["n"], hit["s"], hit["A"]), t)


# ---------------------------------------------------------------- two-orbit 9-designs in dimension 3


def nine_design_system(case: int, A1, A2, share1) -> tuple:
    """Residuals of the polynomial system met by the dimension-3 two-orbit 9-designs.

    ``case=1`` covers tails ``(1, 2)`` and ``case=2`` tails ``(2, 2)``.
    ``share1`` is the mass share ``W~_1`` of the first orbit, i.e. its point
    weight times its 24 points.
    """
    if case == 1:
        return (
            17 - 92 * A2 + 78 * A2**2 - 44 * A2**3 + 5 * A2**4,
            24 - 167 * A1 + 24 * A1**2 + 57 * A1 * A2 - 39 * A1 * A2**2 + 5 * A1 * A2**3,
            -845 - 522 * A2 + 369 * A2**2 - 40 * A2**3 + 1785 * share1,
        )
    if case == 2:
        return (
            -19 + 116 * A2 + 66 * A2**2 - 20 * A2**3 + A2**4,
            -175 + 12 * A1 - 47 * A2 + 19 * A2**2 - A2**3,
            -3956 + 2291 * A2 - 349 * A2**2 + 13 * A2**3 + 7770 * share1,
        )
    raise ValueError("case must be 1 or 2")
