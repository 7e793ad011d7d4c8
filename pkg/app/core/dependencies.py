"""
Dependency wiring for sessions, repositories and services.
"""
from contextlib import contextmanager
from typing import Generator, Iterator, Optional

from sqlalchemy.orm import Session

from app.core.logging_config import logger
from app.repositories.run_repository import RunRepository
from app.services.torelli_service import TorelliService


def get_db_session() -> Generator[Session, None, None]:
    """Get database session."""
    from app.models.database import SessionLocal
    session = SessionLocal()
    try:
        yield session
    finally:
        session.close()


def get_run_repository(session: Session) -> RunRepository:
    """Get run repository instance."""
    return RunRepository(session)


def get_torelli_service(repository: Optional[RunRepository] = None) -> TorelliService:
    """Get service instance."""
    try:
        return TorelliService(repository)
    except Exception as e:
        logger.error(f"Failed to initialize service: {e}")
        raise


@contextmanager
def service_scope(record: bool = False) -> Iterator[TorelliService]:
    """A service, backed by the run ledger when record is set."""
    if not record:
        yield get_torelli_service()
        return
    from app.models.database import init_db
    init_db()
    sessions = get_db_session()
    session = next(sessions)
    try:
        yield get_torelli_service(get_run_repository(session))
    finally:
        sessions.close()
