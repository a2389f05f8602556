import random

import pytest

from brauerheight.config import DEFAULT_SEED


def pytest_addoption(parser):
    parser.addoption(
        "--seed", type=int, default=DEFAULT_SEED, help="seed of randomised property tests"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive suites taking several seconds")


@pytest.fixture()
def rng(request) -> random.Random:
    return random.Random(request.config.getoption("--seed"))
