from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.cli import load_asset
from artifact.design import WeightedDesign, verify_design
from artifact.search import (
    NegativeWeightError,
    admissible_s_range,
    admissible_s_values,
    case_iii_scan,
    curve_f,
    curve_integer_points,
    f6_difference_expression,
    g_polynomials,
    golden_pair,
    max_moment_residual,
    nine_design_system,
    quartic_integer_roots,
    quartic_integer_roots_complete,
    refine_design,
    search_single_orbit_7,
    six_s_minus_3_product,
    square_test_solutions,
    tanino_cubic,
    tanino_scan,
    verify_hit,
)

REFINE_ANCHORS = ["table2_row1", "table2_row2", "sec6_11_n4", "sec6_13a", "sec6_13b", "sec6_11_n3"]


def corpus_design(anchor: str) -> WeightedDesign:
    return WeightedDesign.from_json(load_asset(anchor)["design"])


def test_single_orbit_scan_to_thirty():
    hits = search_single_orbit_7(30).hits
    assert [(h["n"], h["s"], h["A"]) for h in hits] == [(16, 8, 4), (23, 11, 4)]


def test_single_orbit_scan_to_fifteen_is_empty():
    assert search_single_orbit_7(15).hits == []


def test_hits_verify_at_seven_and_fail_at_nine():
    for hit in search_single_orbit_7(30).hits:
        assert verify_hit(hit, 7).verified
        assert verify_hit(hit, 9).failing[0] == 8


def test_square_test_solutions():
    assert square_test_solutions() == [(0, -8), (0, 8), (1, -7), (1, 7), (5, -13), (5, 13)]


def test_curve_points():
    pts = curve_integer_points(30, 30)
    for p in [(2, 1), (1, 0), (16, 8), (23, 11)]:
        assert p in pts
        assert curve_f(*p) == 0
    # exhaustive: (1, 1) is a smooth point of the curve besides the two singular ones
    assert curve_integer_points(5, 5) == [(1, 0), (1, 1), (2, 1)]


def test_tanino_small_scans():
    assert tanino_scan(1) == [(2, 1, 1), (1, 0, 0)]
    assert tanino_scan(0) == [(1, 0, 0)]
    assert tanino_scan(40, distinct_only=True) == []


def test_tanino_hits_substitute_to_zero():
    for n, s1, s2 in tanino_scan(60):
        assert tanino_cubic(n, s1, s2) == 0


def test_tanino_diagonal_family():
    # n = 3s - 1 solves the cubic whenever both tails equal s
    for s in range(1, 200):
        assert tanino_cubic(3 * s - 1, s, s) == 0


def test_quartic_has_no_integer_roots():
    assert quartic_integer_roots_complete() == []
    assert quartic_integer_roots(10**4) == []


def test_admissible_ranges():
    assert admissible_s_range(16) == (Fraction(1500, 198), Fraction(1500, 156))
    assert admissible_s_values(16) == [8, 9]
    assert admissible_s_range(3) == (Fraction(70, 42), Fraction(70, 39))
    assert admissible_s_values(3) == []


def test_case_iii_scan_finds_nothing():
    result = case_iii_scan(691)
    assert result.hits == []
    assert result.examined > 0


def test_six_s_minus_3_branch_is_negative():
    assert all(six_s_minus_3_product(s) < 0 for s in range(1, 500))


def test_golden_pair_solves_g_system():
    A1, A2 = golden_pair()
    assert g_polynomials(A1, A2, 1, 3) == (0, 0, 0)


def test_f6_difference_expression_value():
    A1, A2 = golden_pair()
    assert f6_difference_expression(A1, A2, 1, 3) == -44


def test_nine_design_system_validation():
    with pytest.raises(ValueError):
        nine_design_system(3, 1, 1, 1)


def test_refine_row_one():
    d = corpus_design("table2_row1")
    refined = refine_design(d, 9, 1e-12)
    assert max_moment_residual(refined, 9) < 1e-12
    assert verify_design(refined, 9, mode="float").verified


def test_refine_keeps_exact_design():
    d = corpus_design("eq_schur")
    assert refine_design(d, 11) is d


@pytest.mark.parametrize("anchor", REFINE_ANCHORS)
def test_refinement_is_small_and_does_not_increase_residual(anchor):
    asset = load_asset(anchor)
    d = WeightedDesign.from_json(asset["design"])
    t = asset["degree"]
    refined = refine_design(d, t, asset["target"])
    with mpmath.workprec(256):
        assert max_moment_residual(refined, t) <= max_moment_residual(d, t)
        for (o, w), (r, rw) in zip(d.to_float().orbits, refined.orbits):
            assert (o.n, o.s) == (r.n, r.s)
            assert abs(rw / w - 1) < 1e-4
            assert abs(mpmath.sqrt(r.A / o.A) - 1) < 1e-4


def test_stated_seventeen_design_has_negative_weight():
    asset = load_asset("sec6_17_heoxu")
    with pytest.raises(NegativeWeightError):
        refine_design(WeightedDesign.from_json(asset["design"]), 17, asset["target"])


@pytest.mark.parametrize("anchor, case", [("table2_row1", 1), ("table2_row2", 2)])
def test_refined_table_rows_satisfy_polynomial_system(anchor, case):
    refined = refine_design(corpus_design(anchor), 9, 1e-40)
    with mpmath.workprec(256):
        (o1, w1), (o2, _) = refined.orbits
        residuals = nine_design_system(case, o1.A, o2.A, w1 * 24)
        assert max(abs(r) for r in residuals) < 1e-10


@settings(max_examples=30)
@given(st.integers(3, 60), st.integers(1, 59))
def test_single_orbit_hits_match_exact_scan(n, s):
    if s >= n:
        return
    hits = {(h["n"], h["s"]) for h in search_single_orbit_7(n).hits}
    assert ((n, s) in hits) == ((n, s) in {(16, 8), (23, 11)} and n >= 16)
