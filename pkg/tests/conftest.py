import pytest
from hypothesis import settings

from comp_dof.net_model import WYNER_ASYMMETRIC, build_network

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

_CACHE = {}


@pytest.fixture(scope="session")
def asym():
    """Cached asymmetric-chain factory: asym(K, seed=7)."""

    def factory(K, seed=7, cyclic=False):
        key = (K, seed, cyclic)
        if key not in _CACHE:
            _CACHE[key] = build_network(WYNER_ASYMMETRIC, K, 1, cyclic, seed)
        return _CACHE[key]

    return factory
