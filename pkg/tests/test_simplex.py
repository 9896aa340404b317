from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.cli import load_asset
from artifact.design import FULL, WeightedDesign, design_from_shares, solve_weights, verify_design
from artifact.moments import orbit_moment
from artifact.orbits import GCVOrbit
from artifact.simplex import (
    NonSymmetricInputError,
    SimplexCubature,
    boundary_classify,
    boundary_polynomial_integral,
    boundary_polynomial_sum,
    simplex_to_sphere,
    sphere_to_simplex,
    verify_simplex_cubature,
)

F = Fraction


def corpus_design(anchor: str) -> WeightedDesign:
    return WeightedDesign.from_json(load_asset(anchor)["design"])


def octahedron() -> WeightedDesign:
    return WeightedDesign(3, ((GCVOrbit(3, 1, 0), F(1, 6)),), FULL)


def test_octahedron_image():
    sc = sphere_to_simplex(octahedron(), 3)
    assert sc.as_dict() == {(1, 0): F(1, 3), (0, 1): F(1, 3), (0, 0): F(1, 3)}
    assert sc.degree == 1


def test_midpoint_image():
    sc = sphere_to_simplex(WeightedDesign(3, ((GCVOrbit(3, 1, 1), F(1, 12)),), FULL), 3)
    assert sc.as_dict() == {(F(1, 2), 0): F(1, 3), (0, F(1, 2)): F(1, 3), (F(1, 2), F(1, 2)): F(1, 3)}


@pytest.mark.parametrize("anchor", ["ex28_simplex_octahedron", "ex28_simplex_midpoints"])
def test_corpus_images(anchor):
    asset = load_asset(anchor)
    sc = sphere_to_simplex(corpus_design(asset["source"]), asset["t_sphere"])
    want = SimplexCubature.from_json({"n": 3, "nodes": asset["nodes"], "weights": asset["weights"]})
    assert sc.as_dict() == want.as_dict()


def test_all_corner_orbit_collapses():
    sc = sphere_to_simplex(WeightedDesign(4, ((GCVOrbit(4, 1, 3), F(1, 16)),), FULL), 3)
    assert sc.as_dict() == {(F(1, 4),) * 3: 1}


def test_lift_of_octahedron_image():
    lifted = simplex_to_sphere(sphere_to_simplex(octahedron(), 3))
    coords = {tuple(sg * (1 if q else 0) for sg, q in zip(signs, sq)) for (signs, sq), _ in lifted}
    assert len(lifted) == 6 and all(w == F(1, 6) for _, w in lifted)
    assert coords == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}


def test_lift_of_single_interior_node():
    lifted = simplex_to_sphere(SimplexCubature(4, ((F(1, 4),) * 3,), (F(1),)))
    assert len(lifted) == 16
    assert all(w == F(1, 16) and sq == (F(1, 4),) * 4 for (_, sq), w in lifted)


def test_round_trip_on_node_data():
    sc = SimplexCubature(3, ((F(1, 2), F(1, 4)), (0, F(1, 3)), (0, 0)), (F(1, 2), F(1, 3), F(1, 6)), 1)
    back = sphere_to_simplex(simplex_to_sphere(sc), 3)
    assert back.as_dict() == sc.as_dict()


def test_octahedron_rule_degrees():
    sc = sphere_to_simplex(octahedron(), 3)
    assert verify_simplex_cubature(sc, 1).verified
    report = verify_simplex_cubature(sc, 2)
    assert not report.verified and report.max_degree == 1
    # node average of z_1^2 is 1/3 against the weighted moment 1/5
    assert report.failing == ((2, 0), F(1, 3) - F(1, 5))


def test_mass_only():
    assert verify_simplex_cubature(SimplexCubature(3, ((0, 0),), (F(1),)), 0).verified
    assert not verify_simplex_cubature(SimplexCubature(3, ((0, 0),), (F(1, 2),)), 0).verified


@pytest.mark.parametrize("anchor, t", [("eq_schur", 11), ("ex23_octahedron", 3), ("ex23_midpoints", 3)])
def test_failure_degrees_correspond(anchor, t):
    d = corpus_design(anchor)
    assert verify_design(d, t + 1).failing[0] == t + 1
    sc = sphere_to_simplex(d, t)
    assert verify_simplex_cubature(sc, (t - 1) // 2).verified
    assert verify_simplex_cubature(sc, (t + 1) // 2).max_degree == (t - 1) // 2


def test_float_design_image():
    sc = sphere_to_simplex(corpus_design("ex22_dodecagon"), 11)
    assert verify_simplex_cubature(sc, 5).verified
    assert not verify_simplex_cubature(sc, 6).verified


def test_non_symmetric_points_rejected():
    pts = [(((1, 0, 0), (1, 0, 0)), F(1, 2)), (((0, 1, 0), (0, 1, 0)), F(1, 2))]
    with pytest.raises(NonSymmetricInputError):
        sphere_to_simplex(pts, 3)


def test_validation():
    with pytest.raises(ValueError):
        SimplexCubature(3, ((F(2, 3), F(2, 3)),), (F(1),))
    with pytest.raises(ValueError):
        SimplexCubature(3, ((F(1, 3),),), (F(1),))
    with pytest.raises(ValueError):
        sphere_to_simplex(octahedron(), 4)


def test_json_round_trip():
    sc = sphere_to_simplex(corpus_design("eq_schur"), 11)
    assert SimplexCubature.from_json(json.loads(json.dumps(sc.to_json()))) == sc


def test_placements():
    p = boundary_classify(GCVOrbit(3, 5, 0))
    assert p.kind == "vertex-set"
    assert set(p.nodes) == {(0, 0), (1, 0), (0, 1)}
    assert boundary_classify(GCVOrbit(3, 3, 2)).kind == "median"
    assert boundary_classify(GCVOrbit(3, 3, 1)).kind == "boundary"
    p = boundary_classify(GCVOrbit(4, 2, 3))
    assert p.kind == "interior" and p.facets == ()


def test_boundary_polynomial_integral_positive():
    assert all(boundary_polynomial_integral(n) > 0 for n in range(2, 9))


@settings(max_examples=40)
@given(st.integers(3, 6), st.integers(0, 10**6))
def test_facet_rules_miss_the_boundary_polynomial(n, seed):
    rng = random.Random(seed)
    orbits = []
    while len(orbits) < rng.randint(1, 4):
        o = GCVOrbit(n, F(rng.randint(1, 30), rng.randint(1, 5)), rng.randint(0, n - 2))
        if o not in orbits:
            orbits.append(o)
    k = len(orbits)
    solved = solve_weights(orbits, 2 * k - 1)
    shares = solved.scaled_weights if solved.feasible else [F(1, k)] * k
    sc = sphere_to_simplex(design_from_shares(orbits, shares), 1)
    assert boundary_polynomial_sum(sc) == 0
    assert verify_simplex_cubature(sc, n).max_degree < n


@settings(max_examples=60)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_pullback_averages_match(n, seed):
    rng = random.Random(seed)
    orbits = []
    while len(orbits) < rng.randint(1, 3):
        o = GCVOrbit(n, F(rng.randint(1, 30), rng.randint(1, 5)), rng.randint(0, n - 1))
        if o not in orbits:
            orbits.append(o)
    shares = [F(rng.randint(1, 9)) for _ in orbits]
    total = sum(shares)
    d = design_from_shares(orbits, [w / total for w in shares])
    sc = sphere_to_simplex(d, 1)
    alpha = tuple(rng.randint(0, 2) for _ in range(n))
    sphere_side = sum(w * orbit_moment(o, tuple(2 * a for a in alpha)) for (o, _), w in zip(d.orbits, d.scaled_weights()))
    simplex_side = F(0)
    for z, c in zip(sc.nodes, sc.weights):
        term = c * (1 - sum(z)) ** alpha[-1]
        for x, a in zip(z, alpha):
            term *= x**a
        simplex_side += term
    assert sphere_side == simplex_side
