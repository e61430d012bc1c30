"""Shared fixtures for the mcgate test suite."""

import numpy as np
import pytest
from scipy.stats import unitary_group

from mcgate import config
from mcgate.algebra import UnitaryMatrix2


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Every test starts from default settings and no MCGATE_* variables."""
    for name in config.ENVIRONMENT_VARIABLES:
        monkeypatch.delenv(name, raising=False)
    config.reset_settings()
    yield
    config.reset_settings()


def random_u2(seed: int) -> UnitaryMatrix2:
    return UnitaryMatrix2(unitary_group.rvs(2, random_state=seed))


def random_su2(seed: int) -> UnitaryMatrix2:
    m = unitary_group.rvs(2, random_state=seed)
    return UnitaryMatrix2(m / np.sqrt(np.linalg.det(m)))


@pytest.fixture
def u2():
    return random_u2


@pytest.fixture
def su2():
    return random_su2
