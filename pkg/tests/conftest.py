import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.lgroup import WeightType  # noqa: E402

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def w222() -> WeightType:
    return WeightType((2, 2, 2))


@pytest.fixture
def w235() -> WeightType:
    return WeightType((2, 3, 5))


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv("HWPL_THREADS", "1")
