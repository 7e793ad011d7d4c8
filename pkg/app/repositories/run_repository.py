"""
Repository pattern for the analysis run ledger.
"""
import hashlib
import json
from typing import Any, List, Optional

from sqlalchemy.orm import Session

from app.core.exceptions import DatabaseError, RunNotFoundError
from app.core.logging_config import logger
from app.models.database import AnalysisRun


def input_digest(data: Any) -> str:
    """sha256 of the canonical (sorted-key, compact) JSON form of data."""
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class RunRepository:
    """Repository for recording and querying analysis runs."""

    def __init__(self, session: Session):
        self.session = session

    def record_run(self, command: str, input_data: Any, report: dict) -> AnalysisRun:
        """Store a report; verdict fields are copied out of report["verdict"] when present."""
        verdict = report.get("verdict") or {}
        try:
            run = AnalysisRun(
                command=command,
                input_digest=input_digest(input_data),
                outcome=verdict.get("outcome"),
                rule_id=verdict.get("rule_id"),
                mu_corank=verdict.get("mu_corank"),
                payload=json.dumps(report, sort_keys=True),
            )
            self.session.add(run)
            self.session.commit()
            self.session.refresh(run)
            logger.info(f"Recorded run {run.id} ({command}, {run.outcome})")
            return run
        except Exception as e:
            self.session.rollback()
            logger.error(f"Error recording run: {e}")
            raise DatabaseError(f"Failed to record run: {str(e)}")

    def get_run(self, run_id: int) -> AnalysisRun:
        """Get a run by ID."""
        try:
            run = self.session.query(AnalysisRun).filter(AnalysisRun.id == run_id).first()
            if not run:
                raise RunNotFoundError(f"Run with id {run_id} not found")
            return run
        except RunNotFoundError:
            raise
        except Exception as e:
            logger.error(f"Error getting run by id: {e}")
            raise DatabaseError(f"Failed to get run: {str(e)}")

    def list_runs(self, limit: Optional[int] = None) -> List[AnalysisRun]:
        """Most recent runs first."""
        try:
            query = self.session.query(AnalysisRun).order_by(AnalysisRun.id.desc())
            if limit is not None:
                query = query.limit(limit)
            return query.all()
        except Exception as e:
            logger.error(f"Error listing runs: {e}")
            raise DatabaseError(f"Failed to list runs: {str(e)}")

    def find_by_digest(self, digest: str) -> List[AnalysisRun]:
        """All runs recorded for the same input, oldest first."""
        try:
            return self.session.query(AnalysisRun).filter(
                AnalysisRun.input_digest == digest
            ).order_by(AnalysisRun.id.asc()).all()
        except Exception as e:
            logger.error(f"Error finding runs by digest: {e}")
            raise DatabaseError(f"Failed to find runs: {str(e)}")

    @staticmethod
    def to_summary(run: AnalysisRun) -> dict:
        return {
            "id": run.id,
            "command": run.command,
            "input_digest": run.input_digest,
            "outcome": run.outcome,
            "rule_id": run.rule_id,
            "mu_corank": run.mu_corank,
            "created_at": run.created_at.isoformat() if run.created_at else None,
        }
