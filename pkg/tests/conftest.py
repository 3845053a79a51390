from functools import lru_cache

import pytest

from quadrance import build_field, factor_prime_power


@lru_cache(maxsize=None)
def _field(q):
    p, e = factor_prime_power(q)
    return build_field(p, e)


@pytest.fixture(scope="session")
def field_for():
    """Cached F_q constructor shared by the whole run."""
    return _field


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; rerun with --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
