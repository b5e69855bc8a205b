import pytest
from hypothesis import settings

from blochtower import exact_linalg

# everything in this package is deterministic; keep the test run that way too
settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


@pytest.fixture(autouse=True, scope="session")
def _verify_transforms():
    # every Smith call in the test run re-checks U*M*V == D and unimodularity
    exact_linalg.VERIFY_TRANSFORMS = True
    yield
    exact_linalg.VERIFY_TRANSFORMS = False
