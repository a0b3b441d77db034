from functools import lru_cache

import pytest
from hypothesis import settings

from fwlab import build_profile, derive_constants

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40)
settings.load_profile("repo")


@lru_cache(maxsize=16)
def _profile(c: float, k: float = 0.0, n: int = 4096, half_width: float | None = None):
    return build_profile(derive_constants(c, k), half_width=half_width, n=n)


@pytest.fixture(scope="session")
def profile_for():
    return _profile


@pytest.fixture(scope="session")
def profile12():
    return _profile(1.2)
