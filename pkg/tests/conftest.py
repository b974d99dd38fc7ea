import os

import numpy as np
import pytest
from hypothesis import settings

from app.schemas.state import BlochTwoQubit, MixParam
from app.services.states import mcs_mis_mixture, random_bloch_state

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("fast", max_examples=20, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    """Генератор с фиксированным зерном."""
    return np.random.default_rng(20240601)


@pytest.fixture
def mcs_state():
    return mcs_mis_mixture(MixParam(p=1.0))


@pytest.fixture
def phi_plus():
    """|Φ+⟩: x = y = 0, T = diag(1, −1, 1)."""
    return BlochTwoQubit.from_arrays((0, 0, 0), (0, 0, 0), np.diag([1.0, -1.0, 1.0]))


@pytest.fixture
def random_states(rng):
    """Фабрика случайных физических состояний."""
    def make(n: int = 200):
        return [random_bloch_state(rng) for _ in range(n)]
    return make
