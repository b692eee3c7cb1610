"""Shared fixtures for the CatSim test suite."""

from __future__ import annotations

import math

import numpy as np
import pytest

from catsim.engine.hilbert import TruncationScheme
from catsim.engine.model import SystemParams


@pytest.fixture
def params() -> SystemParams:
    return SystemParams(nu=1.0, omega=1.0, omega0=0.2, g=0.005, eta=0.5)


@pytest.fixture
def small_trunc() -> TruncationScheme:
    return TruncationScheme(n_vib=20, n_cav=4, guard=5)


@pytest.fixture
def cavity_trunc() -> TruncationScheme:
    # Eight cavity levels keep the cavity guard band empty when g > 0.
    return TruncationScheme(n_vib=15, n_cav=8, guard=5)


@pytest.fixture
def sample_times() -> np.ndarray:
    return np.linspace(0.0, 2 * math.pi, 64)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture
def random_hermitian(rng):
    def build(dim: int) -> np.ndarray:
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        return (m + m.conj().T) / 2

    return build
