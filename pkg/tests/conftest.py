import numpy as np
import pytest

from helend import helicoid, simple_family_end


@pytest.fixture(scope="session")
def bessel_end():
    """The end with Gauss map exp(z + a/z), a from the first J1 zero."""
    return simple_family_end(1)


@pytest.fixture(scope="session")
def helicoid_end():
    return helicoid()


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
