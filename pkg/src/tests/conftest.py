import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parents[1]
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))  # Modules live flat under src/

from Settings import Resolution  # noqa: E402

DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def light() -> Resolution:
    """Resolution for curve-level checks: 2e-3 grids, no extra alpha candidates."""
    return Resolution(plane_step=2e-3, alpha_points=0)
