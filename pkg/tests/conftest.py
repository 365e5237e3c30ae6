"""
Shared fixtures for the connspace test suite.
"""

from pathlib import Path

import pytest

from connspace.config import reset_settings
from connspace.models.space import ConnSpace, GroundSet, SubsetFamily
from connspace.services.catalog_service import catalog_service
from connspace.services.generation_service import generation_service

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test starts from the default limits."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def b2() -> ConnSpace:
    return catalog_service.brunnian(2)


@pytest.fixture
def b3() -> ConnSpace:
    return catalog_service.brunnian(3)


@pytest.fixture
def v3() -> ConnSpace:
    return catalog_service.v_space(3)


@pytest.fixture
def path3() -> ConnSpace:
    """Integral space generated by {0,1} and {1,2}."""
    return generation_service.generate(GroundSet(size=3), SubsetFamily.of([0b011, 0b110]))


@pytest.fixture
def point() -> ConnSpace:
    return catalog_service.discrete(1)
