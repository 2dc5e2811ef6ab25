import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))


@pytest.fixture(scope="session")
def g2():
    from mpstable.rootdata import build_root_system

    return build_root_system("G2")


@pytest.fixture(scope="session")
def g2_algebra(g2):
    from mpstable.chevalley import structure_constants

    return structure_constants(g2)


@pytest.fixture(scope="session")
def classify_f2():
    from mpstable.g2case import classify_stable

    return classify_stable(2)

