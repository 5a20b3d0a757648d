import numpy as np
import pytest

from compwave import length64_pair, null_space_design


@pytest.fixture(scope="session")
def pair64():
    return length64_pair()


@pytest.fixture(scope="session")
def design_02():
    """48-pulse design resilient over [0, 2], M = 47."""
    return null_space_design(48, (0.0, 2.0))


@pytest.fixture(scope="session")
def design_0pi():
    """48-pulse design resilient over the full interval [0, pi], M = 47."""
    return null_space_design(48, (0.0, np.pi))
