import os

import pytest
from hypothesis import HealthCheck, settings

from aisemiring.catalog import full_registry

settings.register_profile(
    "seeded",
    derandomize=True,
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "seeded"))


@pytest.fixture(scope="session")
def registry():
    return full_registry()


def pytest_collection_modifyitems(config, items):
    if os.environ.get("AISEMIRING_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="opt-in: set AISEMIRING_STRETCH=1")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)
