"""
Shared pytest options and fixtures
"""
import numpy as np
import pytest

from tests.factories import build_dataset

def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slow reproduction checks")

def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)

@pytest.fixture
def separable():
    """x = [1, 2, 3, 4] with classes [0, 0, 1, 1]"""
    return build_dataset({"x": [1.0, 2.0, 3.0, 4.0]}, [0, 0, 1, 1], classification=True)

@pytest.fixture
def gapped():
    """Two classes separated by a gap in x: 1..10 are class 0, 21..30 class 1"""
    x = np.concatenate([np.arange(1, 11), np.arange(21, 31)]).astype(float)
    return build_dataset({"x": x}, (x > 15).astype(float), classification=True)

@pytest.fixture
def regression_data():
    """Numeric signal in x1, noise in x2, a 4-category feature g with a shift"""
    rng = np.random.default_rng(7)
    n = 120
    x1 = rng.standard_normal(n)
    x2 = rng.standard_normal(n)
    g = rng.integers(0, 4, size=n)
    y = 3.0 * (x1 > 0) + 1.5 * (g >= 2) + 0.3 * rng.standard_normal(n)
    return build_dataset({"x1": x1, "x2": x2, "g": g}, y, categories={"g": 4})
