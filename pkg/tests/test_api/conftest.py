import pytest
from fastapi.testclient import TestClient

from connspace.main import app

B3 = "space B3\npoints a b c\nconnected {a b c}\n"


@pytest.fixture
def client() -> TestClient:
    return TestClient(app)


@pytest.fixture
def b3_document() -> str:
    return B3
