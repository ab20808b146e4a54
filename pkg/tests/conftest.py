import numpy as np
import pytest

from nearfield import Medium, Scenario, build_array


@pytest.fixture(scope="session")
def medium01():
    """Free-space medium at exactly lambda = 0.01 m."""
    return Medium.from_wavelength(0.01)


@pytest.fixture(scope="session")
def paper_scenario():
    """30 GHz carrier, 20 x 200 half-wavelength grid, half-wavelength patches."""
    return Scenario()


@pytest.fixture(scope="session")
def paper_array(paper_scenario):
    return paper_scenario.array()


@pytest.fixture(scope="session")
def paper_medium(paper_scenario):
    return paper_scenario.medium()


@pytest.fixture(scope="session")
def small_array(medium01):
    """3 x 2 grid at lambda = 0.01 m, cheap enough for exact-model checks."""
    return build_array(3, 2, 0.004, 0.005)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240818)


def random_displacement(rng, dist_lo=0.05, dist_hi=50.0):
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    return u * rng.uniform(dist_lo, dist_hi)
