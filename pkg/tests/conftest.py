import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture
def theta():
    from qcurv.systems import QDiffSystem

    return QDiffSystem.from_strings([["q*x"]], label="theta")


@pytest.fixture
def logsys():
    from qcurv.systems import QDiffSystem

    return QDiffSystem.from_strings([["1", "l"], ["0", "1"]], constants=["l"], label="log")

