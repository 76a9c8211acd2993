from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def data_dir() -> Path:
    return ROOT / "data"


@pytest.fixture
def golden_dir() -> Path:
    return ROOT / "tests" / "golden"
