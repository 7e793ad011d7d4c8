"""
Tests for the service layer and the acceptance suites.
"""
import random

import pytest

from app.core.exceptions import DatabaseError, NotReduced, RunNotFoundError
from app.curves.curve import Place
from app.curves.divisor import Divisor
from app.services.selftest import (
    SuiteResult,
    classics_suite,
    d5_suite,
    fiber_bundle_suite,
    run_suite,
    twist_suite,
    vanishing_suite,
)
from app.services.torelli_service import EXAMPLE_KINDS, TorelliService
from app.torelli.rules import Outcome


def test_riemann_roch_report(service, genus_two):
    """Test the rr report for 5 infinity."""
    report = service.riemann_roch(genus_two, Divisor.at_infinity(genus_two, 5))
    assert report.degree == 5
    assert (report.h0, report.h1) == (4, 0)
    assert report.basis[0] == "1"


def test_duality_report(service, genus_two):
    """Test that every defect vanishes for 5 infinity."""
    report = service.duality(genus_two, Divisor.at_infinity(genus_two, 5), max_p=1)
    assert report.r == 3
    assert len(report.defects) == 6
    assert report.all_zero


def test_mu_report(service, elliptic):
    """Test mu for a 2-torsion fibre bundle."""
    T = Divisor.point(elliptic, Place(0, 0)) - Divisor.at_infinity(elliptic, 1)
    report = service.mu(elliptic, T, Divisor.zero(elliptic))
    assert report.target_dim == 1
    assert report.corank == 1
    assert not report.surjective


def test_mu_report_rejects_non_reduced_delta(service, genus_two):
    """Test that errors from the engine propagate."""
    with pytest.raises(NotReduced):
        service.mu(genus_two, Divisor.at_infinity(genus_two, 3), Divisor.at_infinity(genus_two, 2))


@pytest.mark.parametrize("kind, rule_id, outcome", [
    ("d5", "R6", Outcome.FAILS),
    ("twist", "R3", Outcome.HOLDS),
    ("bundle", "R5", Outcome.FAILS),
])
def test_examples(kind, rule_id, outcome):
    """Test the verdict of every built-in example."""
    W, report = TorelliService().example(kind, seed=0)
    assert report.verdict.rule_id == rule_id
    assert report.verdict.outcome is outcome
    assert W.curve.p == 101


def test_unknown_example_kind():
    """Test that only the known kinds are built."""
    assert EXAMPLE_KINDS == ("twist", "d5", "bundle")
    with pytest.raises(ValueError):
        TorelliService().build_example("k3")


def test_analyze_records_runs(service):
    """Test that recorded analyses show up in the history."""
    W = service.build_example("d5")
    report = service.analyze(W, compute_mu=True, record=True)
    assert report.verdict.mu_corank >= 1
    assert sorted(n for _, n in report.discriminant_orders) == [10] * 6

    service.analyze(W, record=True)
    runs = service.history()
    assert len(runs) == 2
    assert all(run.command == "analyze" and run.rule_id == "R6" for run in runs)
    assert runs[0].input_digest != runs[1].input_digest
    assert runs[0].id > runs[1].id


def test_recording_needs_a_ledger():
    """Test that recording without a repository fails."""
    service = TorelliService()
    W = service.build_example("d5")
    with pytest.raises(DatabaseError):
        service.analyze(W, record=True)
    with pytest.raises(DatabaseError):
        service.history()


@pytest.mark.parametrize("suite", [classics_suite, d5_suite, twist_suite, fiber_bundle_suite, vanishing_suite])
def test_acceptance_suites(suite):
    """Test that the deterministic suites pass."""
    result = run_suite(suite, seed=0, quick=True)
    assert result.passed, result.detail
    assert result.checked >= 1
    assert result.seconds >= 0


def test_run_suite_reports_engine_errors():
    """Test that a suite raising an engine error counts as failed."""

    def broken_suite(rng: random.Random, quick: bool) -> SuiteResult:
        raise DatabaseError("boom")

    result = run_suite(broken_suite, seed=0, quick=True)
    assert not result.passed
    assert result.name == "broken"
    assert result.detail["error"] == "DatabaseError: boom"


def test_history_by_digest_and_run_detail(service):
    """Test lookups by input digest and by run id."""
    W = service.build_example("d5")
    service.analyze(W, record=True)
    service.analyze(service.build_example("bundle"), record=True)
    service.analyze(W, record=True)

    latest = service.history(limit=1)[0]
    same_input = service.history(digest=latest.input_digest)
    assert [run.rule_id for run in same_input] == ["R6", "R6"]
    assert same_input[0].id < same_input[1].id

    detail = service.run_detail(latest.id)
    assert detail["id"] == latest.id
    assert detail["report"]["verdict"]["rule_id"] == "R6"
    assert detail["report"]["invariants"]["s"] == 6
    with pytest.raises(RunNotFoundError):
        service.run_detail(latest.id + 100)
