import numpy as np
import pytest

from subharmonics import IntegratorConfig, resonance_from_level


@pytest.fixture(scope="session")
def spec31():
    """Reference resonance: level through (0, 1.6), three map steps per loop."""
    return resonance_from_level(1.6, 3, 1)


@pytest.fixture(scope="session")
def spec52():
    return resonance_from_level(1.6, 5, 2)


@pytest.fixture(scope="session")
def spec32_17():
    """The 2/3 resonance on the level through (0, 1.7)."""
    return resonance_from_level(1.7, 3, 2)


@pytest.fixture(scope="session")
def tight_cfg():
    return IntegratorConfig(rel_tol=1e-12, abs_tol=1e-12)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
