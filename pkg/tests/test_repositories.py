"""
Tests for repository layer.
"""
import json

import pytest

from app.core.exceptions import DatabaseError, RunNotFoundError
from app.repositories.run_repository import input_digest


def test_record_run(repository, sample_report):
    """Test run creation."""
    run = repository.record_run("analyze", {"curve": {"p": 101}}, sample_report)

    assert run.id is not None
    assert run.command == "analyze"
    assert run.outcome == "Fails"
    assert run.rule_id == "R6"
    assert run.mu_corank == 1
    assert json.loads(run.payload) == sample_report


def test_record_run_without_verdict(repository):
    """Test that reports without a verdict leave the verdict columns empty."""
    run = repository.record_run("examples", {"kind": "d5"}, {"file": "d5.json"})

    assert run.outcome is None
    assert run.rule_id is None


def test_get_run(repository, sample_report):
    """Test retrieving a run by ID."""
    created = repository.record_run("analyze", {"x": 1}, sample_report)
    run = repository.get_run(created.id)

    assert run.id == created.id
    assert run.input_digest == created.input_digest


def test_get_run_not_found(repository):
    """Test retrieving a non-existent run."""
    with pytest.raises(RunNotFoundError):
        repository.get_run(99999)


def test_list_runs_newest_first(repository, sample_report):
    """Test listing runs with a limit."""
    ids = [repository.record_run("analyze", {"n": n}, sample_report).id for n in range(3)]

    runs = repository.list_runs()
    assert [r.id for r in runs] == sorted(ids, reverse=True)
    assert len(repository.list_runs(limit=2)) == 2


def test_find_by_digest(repository, sample_report):
    """Test that identical inputs share a digest."""
    first = repository.record_run("analyze", {"a": 1, "b": 2}, sample_report)
    repository.record_run("analyze", {"b": 2, "a": 1}, sample_report)
    repository.record_run("analyze", {"a": 2}, sample_report)

    matches = repository.find_by_digest(first.input_digest)
    assert len(matches) == 2
    assert matches[0].id == first.id


def test_input_digest_is_canonical():
    """Test that key order does not change the digest."""
    assert input_digest({"a": [1, 2], "b": None}) == input_digest({"b": None, "a": [1, 2]})
    assert len(input_digest({})) == 64


def test_record_run_rolls_back_on_error(repository, sample_report):
    """Test that a failed insert raises DatabaseError and leaves the session usable."""
    with pytest.raises(DatabaseError):
        repository.record_run(None, {"x": 1}, sample_report)

    run = repository.record_run("analyze", {"x": 1}, sample_report)
    assert run.id is not None


def test_to_summary(repository, sample_report):
    """Test the summary used by the history command."""
    run = repository.record_run("analyze", {"x": 1}, sample_report)
    summary = repository.to_summary(run)

    assert summary["id"] == run.id
    assert summary["outcome"] == "Fails"
    assert summary["created_at"] is not None
