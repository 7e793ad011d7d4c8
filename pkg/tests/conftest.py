"""
Pytest configuration and fixtures.
"""
import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from app.curves.curve import make_curve
from app.models.database import Base
from app.repositories.run_repository import RunRepository
from app.services.torelli_service import TorelliService
from app.torelli.constructions import five_point_curve, genus_three_curve, genus_two_curve

P = 101


@pytest.fixture(scope="session")
def genus_two():
    """y^2 = x^5 + 1 over F_101 (f splits since 5 divides 100)."""
    return genus_two_curve(P)


@pytest.fixture(scope="session")
def split_genus_two():
    """y^2 = x(x-1)(x-2)(x-3)(x-4) over F_101."""
    return five_point_curve(P)


@pytest.fixture(scope="session")
def genus_three():
    """y^2 = x(x-1)...(x-6) over F_101."""
    return genus_three_curve(P)


@pytest.fixture(scope="session")
def elliptic():
    """y^2 = x^3 - x over F_101."""
    return make_curve(P, [0, P - 1, 0, 1])


@pytest.fixture
def test_db():
    """Create a test database."""
    engine = create_engine("sqlite:///:memory:")
    Base.metadata.create_all(bind=engine)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    session = SessionLocal()
    try:
        yield session
    finally:
        session.close()
        Base.metadata.drop_all(bind=engine)


@pytest.fixture
def repository(test_db):
    """Create a repository instance for testing."""
    return RunRepository(test_db)


@pytest.fixture
def service(repository):
    """Create a service backed by the in-memory ledger."""
    return TorelliService(repository)


@pytest.fixture
def sample_report():
    return {
        "invariants": {"g": 2, "d": 5, "s": 6},
        "verdict": {"outcome": "Fails", "rule_id": "R6", "mu_corank": 1},
    }
