import numpy as np
import pytest

from mellinkit import _backend


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger one-time JIT compilation outside any timed test body
    _backend.log_gamma(np.array([1.0 + 1.0j]))
    _backend.weierstrass_logsum(np.array([1.0 + 0j]), np.array([4.0 + 0j]))


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)
