import random

import pytest

from core.numeric.mzv import set_working_precision


@pytest.fixture(autouse=True)
def working_precision():
    """Every test starts at 50 digits."""
    set_working_precision(50)
    yield


@pytest.fixture
def generator() -> random.Random:
    return random.Random(20240607)
