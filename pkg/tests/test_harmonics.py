from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.harmonics import (
    DimensionTooSmallError,
    InvariantId,
    applicable_invariants,
    build_invariant,
    eval_invariant_closed,
    eval_invariant_direct,
    invariant_harmonic_dims,
    invariant_value,
)
from artifact.orbits import GCVOrbit, canonical_rep
from oracles import laplacian, orbit_points, poly_from_terms


def test_f4_in_three_variables():
    p = build_invariant(InvariantId.F4, 3)
    assert p.terms == (((4,), 1), ((2, 2), -3))


def test_f82_needs_four_variables():
    with pytest.raises(DimensionTooSmallError):
        build_invariant(InvariantId.F82, 3)
    with pytest.raises(DimensionTooSmallError):
        eval_invariant_closed(InvariantId.F102, GCVOrbit(4, 1, 1))


def test_f6_in_four_variables():
    p = build_invariant(InvariantId.F6, 4)
    assert dict(p.terms) == {(6,): 1, (4, 2): -5, (2, 2, 2): 30}


def test_direct_evaluation_examples():
    for n in (3, 5, 9):
        e1 = (1,) + (0,) * (n - 1)
        assert eval_invariant_direct(build_invariant(InvariantId.F4, n), e1) == 1
    assert eval_invariant_direct(build_invariant(InvariantId.F4, 4), canonical_rep(GCVOrbit(4, 4, 2))) == 0
    assert eval_invariant_direct(build_invariant(InvariantId.F6, 4), canonical_rep(GCVOrbit(4, 1, 1))) == -1


def test_direct_evaluation_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        eval_invariant_direct(build_invariant(InvariantId.F4, 4), (1, 0, 0))


@pytest.mark.parametrize(
    "inv, n, A, s, value",
    [(InvariantId.F4, 16, 4, 8, 0), (InvariantId.F81, 16, 4, 8, -128), (InvariantId.F6, 4, 4, 2, -24)],
)
def test_closed_form_examples(inv, n, A, s, value):
    assert eval_invariant_closed(inv, GCVOrbit(n, A, s)) == value


def test_untilded_value():
    assert invariant_value(InvariantId.F6, GCVOrbit(4, 4, 2)) == Fraction(-1, 9)


@pytest.mark.parametrize("n, degree, dim", [(4, 8, 2), (3, 10, 1), (5, 0, 1), (4, 10, 1), (5, 10, 2), (3, 8, 1)])
def test_harmonic_dimensions(n, degree, dim):
    assert dict(invariant_harmonic_dims(n, degree))[degree] == dim


def test_odd_dimensions_vanish():
    assert all(d == 0 for deg, d in invariant_harmonic_dims(6, 30) if deg % 2)


def test_applicable_invariants_match_dimensions():
    for n in range(3, 9):
        dims = dict(invariant_harmonic_dims(n, 10))
        for degree in (4, 6, 8, 10):
            assert len(applicable_invariants(n, degree)) == dims[degree]


@pytest.mark.parametrize("inv", list(InvariantId))
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_laplacian_vanishes(inv, n):
    if n < inv.min_dim:
        return
    poly = build_invariant(inv, n).expand()
    assert laplacian(poly) == {}


@pytest.mark.parametrize("inv", list(InvariantId))
def test_expansion_matches_permutation_oracle(inv):
    n = max(inv.min_dim, 5)
    p = build_invariant(inv, n)
    assert p.expand() == poly_from_terms(p.terms, n)


@pytest.mark.parametrize("inv", list(InvariantId))
def test_homogeneous_of_stated_degree(inv):
    p = build_invariant(inv, 6)
    assert p.degree == inv.degree
    assert all(sum(m) == inv.degree for m in p.expand())


invariant_cases = st.tuples(
    st.sampled_from(list(InvariantId)),
    st.integers(3, 10),
    st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50),
    st.data(),
)


@given(invariant_cases)
def test_closed_form_matches_direct(case):
    inv, n, A, data = case
    if n < inv.min_dim:
        n = inv.min_dim
    s = data.draw(st.integers(0, n - 1))
    o = GCVOrbit(n, A, s)
    direct = eval_invariant_direct(build_invariant(inv, n), canonical_rep(o))
    assert eval_invariant_closed(inv, o) == o.norm2 ** (inv.degree // 2) * direct


@given(st.sampled_from(list(InvariantId)), st.integers(0, 3), st.integers(0, 10**6))
def test_invariant_on_orbit_points(inv, s, seed):
    n = max(inv.min_dim, s + 1, 4)
    p = build_invariant(inv, n)
    pts = orbit_points(n, Fraction(7, 3), s)
    sample = random.Random(seed).sample(pts, min(20, len(pts)))
    values = {eval_invariant_direct(p, pt) for pt in sample}
    assert len(values) == 1
