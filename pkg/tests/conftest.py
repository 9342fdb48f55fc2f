"""
Shared fixtures: fresh settings per test and a seeded random source.
"""

import random

import pytest
from hypothesis import settings as hypothesis_settings

from config.settings import get_settings, reset_settings

hypothesis_settings.register_profile("chw", deadline=None, max_examples=40, derandomize=True)
hypothesis_settings.load_profile("chw")


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def rng():
    return random.Random(get_settings().seed)
