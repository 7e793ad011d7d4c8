"""
Tests for verdicts cross-checked against the rank of mu.
"""
import random

import pytest

from app.core.exceptions import BadDegree, DegenerateDisc, NotTorsion, OracleMismatch, TrivialClass
from app.curves.curve import INFINITY, FunctionRep, Place
from app.curves.divisor import Divisor
from app.torelli.constructions import (
    build_bundle_example,
    build_constant_j_example,
    build_d5_example,
    build_twist_example,
)
from app.torelli.decide import fiber_bundle_check, torelli_decide
from app.torelli.invariants import extract_invariants
from app.torelli.rules import Outcome, Verdict
from app.torelli.weierstrass import JClass, discriminant


def test_degree_five_counterexample(genus_two):
    """Test that the base-point rule agrees with a non-surjective mu."""
    W = build_d5_example(genus_two)
    plain = torelli_decide(W)
    assert plain.rule_id == "R6"
    assert plain.mu_corank is None

    checked = torelli_decide(W, compute_mu=True)
    assert checked.outcome is Outcome.FAILS
    assert checked.rule_id == "R6"
    assert checked.mu_corank >= 1


def test_nonconstant_j_skips_mu(split_genus_two):
    """Test that mu is not computed outside the constant-j reduction."""
    W = build_twist_example(split_genus_two, random.Random(0))
    verdict = torelli_decide(W, compute_mu=True)
    assert verdict.rule_id == "R3"
    assert verdict.mu_corank is None


def test_large_degree_criterion_matches_mu(genus_two):
    """Test that the h0 criterion agrees with a surjective mu."""
    for seed in range(50):
        W = build_constant_j_example(genus_two, 3, JClass.CONSTANT_ZERO, random.Random(seed))
        inv, _ = extract_invariants(W)
        if inv.s >= 5:
            break
    else:
        pytest.fail("no constant-j example with s >= d + 2")
    verdict = torelli_decide(W, compute_mu=True)
    assert verdict.rule == "mu-surjective/h0-lemma/large-degree"
    assert verdict.outcome is Outcome.HOLDS
    assert verdict.mu_corank == 0


def test_disagreement_raises(genus_two, monkeypatch):
    """Test that a rule contradicting the computed rank is reported."""
    wrong = Verdict(outcome=Outcome.HOLDS, rule_id="R8", rule="mu-surjective/h0-lemma/large-degree")
    monkeypatch.setattr("app.torelli.decide.torelli_verdict", lambda inv: wrong)
    with pytest.raises(OracleMismatch):
        torelli_decide(build_d5_example(genus_two), compute_mu=True)


def test_fibre_bundle_over_elliptic_curve(elliptic):
    """Test a 2-torsion class on y^2 = x^3 - x."""
    T = Divisor.point(elliptic, Place(0, 0)) - Divisor.at_infinity(elliptic, 1)
    verdict = fiber_bundle_check(elliptic, T)
    assert verdict.outcome is Outcome.FAILS
    assert verdict.rule_id == "R5"
    assert verdict.mu_corank == 1


def test_fibre_bundle_over_genus_two(genus_two):
    """Test that genus two is decided by the computed rank."""
    T = Divisor.point(genus_two, Place(100, 0)) - Divisor.at_infinity(genus_two, 1)
    verdict = fiber_bundle_check(genus_two, T)
    assert verdict.rule == "fiber-bundle-mu-criterion"
    assert verdict.outcome in (Outcome.HOLDS, Outcome.FAILS)
    assert verdict.mu_corank is not None
    assert (verdict.mu_corank == 0) == (verdict.outcome is Outcome.HOLDS)


def test_fibre_bundle_argument_errors(elliptic, monkeypatch):
    """Test degree, triviality and torsion checks."""
    with pytest.raises(BadDegree):
        fiber_bundle_check(elliptic, Divisor.at_infinity(elliptic, 1))
    with pytest.raises(TrivialClass):
        fiber_bundle_check(elliptic, Divisor.zero(elliptic))
    monkeypatch.setattr("app.torelli.decide.torsion_order", lambda curve, T: 5)
    T = Divisor.point(elliptic, Place(0, 0)) - Divisor.at_infinity(elliptic, 1)
    with pytest.raises(NotTorsion):
        fiber_bundle_check(elliptic, T)


def test_fibre_bundle_over_split_genus_two(split_genus_two):
    """Test T = w1 - w2 for two affine Weierstrass places."""
    C = split_genus_two
    w1, w2 = [P for P in C.weierstrass_places() if P != INFINITY][:2]
    T = Divisor.point(C, w1) - Divisor.point(C, w2)
    verdict = fiber_bundle_check(C, T)
    assert verdict.outcome is Outcome.FAILS
    assert verdict.rule_id == "R5"
    assert verdict.rule == "fiber-bundle-mu-criterion"
    assert verdict.citation.startswith("theorem:")
    assert verdict.mu_corank == 2

    W = build_bundle_example(C, T)
    assert not discriminant(W).is_zero
    decided = torelli_decide(W, compute_mu=True)
    assert decided.outcome is Outcome.FAILS
    assert decided.rule_id == "R5"
    assert decided.mu_corank == 2


def test_bundle_example_rejects_vanishing_discriminant(split_genus_two, monkeypatch):
    """Test that a discriminant vanishing for every draw raises."""
    C = split_genus_two
    w1, w2 = [P for P in C.weierstrass_places() if P != INFINITY][:2]
    T = Divisor.point(C, w1) - Divisor.point(C, w2)
    monkeypatch.setattr("app.torelli.constructions.discriminant", lambda W: FunctionRep.zero(C.p))
    with pytest.raises(DegenerateDisc):
        build_bundle_example(C, T)
