from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.cli import load_asset
from artifact.design import FULL, WeightedDesign
from artifact.hilbert import (
    HilbertIdentity,
    IdentityReport,
    NotIndexDesignError,
    c_nt,
    degree_bound_tripwire,
    design_to_identity,
    identity_from_orbits,
    schur_identity,
    verify_identity,
)
from artifact.orbits import GCVOrbit

F = Fraction


def corpus_design(anchor: str) -> WeightedDesign:
    return WeightedDesign.from_json(load_asset(anchor)["design"])


def test_c_nt_values():
    assert c_nt(4, 5) == F(21, 512)
    assert c_nt(3, 2) == F(1, 5)
    for n in range(2, 9):
        assert c_nt(n, 1) == F(1, n)


def test_schur_identity_matches_corpus():
    asset = HilbertIdentity.from_json(load_asset("eq_schur1")["identity"])
    assert sorted(asset.terms) == sorted(schur_identity().terms)
    assert len(asset.terms) == 48 + 4 + 12 + 8


def test_schur_identity_holds():
    report = verify_identity(schur_identity())
    assert report.passed and report.exact
    assert report.worst == 0


def test_first_coefficient_decomposition():
    h = schur_identity()
    groups: dict = {}
    for coef, form in h.terms:
        key = (coef, abs(form[0]))
        groups[key] = groups.get(key, 0) + coef * form[0] ** 10
    parts = [groups[(F(1), 2)], groups[(F(1), 1)], groups[(F(9), 2)], groups[(F(180), 1)], groups[(F(9), 1)]]
    assert parts == [12288, 24, 9216, 1080, 72]
    assert sum(parts) == 22680


def perturbed_schur() -> HilbertIdentity:
    return identity_from_orbits(
        4, 5, F(22680),
        [(F(1), (2, 1, 1, 0)), (F(9), (2, 0, 0, 0)), (F(181), (1, 1, 0, 0)), (F(9), (1, 1, 1, 1))],
    )


def test_perturbed_identity_fails():
    report = verify_identity(perturbed_schur())
    assert not report.passed
    assert report.residuals[(8, 2, 0, 0)] == 90
    assert report.first_failure == ((10, 0, 0, 0), 6)


def test_one_variable_identity():
    for t in range(5):
        assert verify_identity(HilbertIdentity(1, t, F(1), ((F(1), (F(1),)),))).passed


def test_schur_design_gives_schur_identity():
    h = design_to_identity(corpus_design("eq_schur"), 5)
    assert h.c == 22680
    assert sorted(h.terms) == sorted(schur_identity().terms)
    ratios = sorted({coef for coef, _ in h.terms})
    assert ratios == [1, 9, 180]


def test_octahedron_identity():
    d = WeightedDesign(3, ((GCVOrbit(3, 1, 0), F(1, 6)),), FULL)
    h = design_to_identity(d, 1, clear=False)
    assert h.c == F(1, 3)
    assert sorted(h.terms) == [(F(1, 3), (0, 0, 1)), (F(1, 3), (0, 1, 0)), (F(1, 3), (1, 0, 0))]
    assert verify_identity(h).passed


@pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
def test_dodecagon_identities(t):
    h = design_to_identity(corpus_design("ex22_dodecagon").to_float(), t)
    assert verify_identity(h).passed


def test_dodecagon_has_no_index_twelve():
    with pytest.raises(NotIndexDesignError):
        design_to_identity(corpus_design("ex22_dodecagon").to_float(), 6)


def test_not_index_design():
    d = WeightedDesign(3, ((GCVOrbit(3, 1, 0), F(1, 6)),), FULL)
    with pytest.raises(NotIndexDesignError):
        design_to_identity(d, 2)


@pytest.mark.parametrize("anchor, t_max", [("eq_schur", 5), ("ex23_octahedron", 1), ("ex23_midpoints", 1)])
def test_round_trip_through_identity(anchor, t_max):
    d = corpus_design(anchor)
    for t in range(1, t_max + 1):
        h = design_to_identity(d, t)
        assert verify_identity(h).passed
        assert verify_identity(HilbertIdentity.from_json(h.to_json())).passed


@settings(max_examples=8)
@given(st.permutations(range(4)))
def test_permuting_variables_preserves_verdict(perm):
    for h in (schur_identity(), perturbed_schur()):
        moved = HilbertIdentity(h.n, h.t, h.c, tuple((c, tuple(f[i] for i in perm)) for c, f in h.terms))
        base, report = verify_identity(h), verify_identity(moved)
        assert report.passed == base.passed
        inverse = {v: k for k, v in enumerate(perm)}
        assert {tuple(m[inverse[i]] for i in range(4)): r for m, r in base.residuals.items()} == report.residuals


def test_tripwire():
    h = schur_identity()
    assert degree_bound_tripwire(h, verify_identity(h)) is None
    fake = HilbertIdentity(4, 8, F(1), ((F(1), (F(1), F(1), F(0), F(0))),))
    assert degree_bound_tripwire(fake, IdentityReport(True, True)) is not None
    assert degree_bound_tripwire(fake, IdentityReport(False, True)) is None


def test_random_forms_fail_generically():
    rng = random.Random(5)
    terms = tuple((F(rng.randint(1, 9)), tuple(F(rng.randint(-3, 3)) for _ in range(3))) for _ in range(6))
    assert not verify_identity(HilbertIdentity(3, 2, F(1), terms)).passed
