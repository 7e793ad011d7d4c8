"""
Database models and session management for the run ledger.
"""
from sqlalchemy import create_engine, Column, Integer, String, Text, DateTime
from sqlalchemy.ext.declarative import declarative_base
from sqlalchemy.orm import sessionmaker
from datetime import datetime
from app.core.config import settings
from app.core.logging_config import logger

Base = declarative_base()


class AnalysisRun(Base):
    """One recorded analysis: its input digest, verdict and full JSON report."""
    __tablename__ = "analysis_runs"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String, nullable=False)  # e.g. "analyze", "examples"
    input_digest = Column(String(64), index=True, nullable=False)  # sha256 of the canonical input JSON
    outcome = Column(String, nullable=True)
    rule_id = Column(String, nullable=True)
    mu_corank = Column(Integer, nullable=True)
    payload = Column(Text, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow)

    def __repr__(self):
        return f"<AnalysisRun(id={self.id}, command={self.command}, outcome={self.outcome})>"


# Database engine and session factory
engine = create_engine(
    settings.database_url,
    connect_args={"check_same_thread": False} if "sqlite" in settings.database_url else {},
    echo=settings.database_echo
)

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def init_db():
    """Initialize database tables."""
    Base.metadata.create_all(bind=engine)
    logger.info("Database initialized")
