"""
Pytest configuration and shared fixtures for the qinfo tests.
"""

import os
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

from qinfo.core.config import OptimizerConfig
from qinfo.state.density import DensityOperator
from qinfo.state.factory import bell, ghz, w


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property sweeps are reproducible."""
    return np.random.default_rng(1234)


@pytest.fixture
def bell_state() -> DensityOperator:
    return bell()


@pytest.fixture
def ghz_state() -> DensityOperator:
    return ghz(3)


@pytest.fixture
def w_state() -> DensityOperator:
    return w(3)


@pytest.fixture
def fast_optimizer() -> OptimizerConfig:
    """Few restarts and a short iteration cap for unit-level optimizer tests."""
    return OptimizerConfig(restarts=3, max_iters=400, seed=5)


@pytest.fixture
def clean_env(monkeypatch, tmp_path) -> Generator[Path, None, None]:
    """Run in an empty directory with no QINFO_* variables set."""
    for key in list(os.environ):
        if key.upper().startswith("QINFO_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    yield tmp_path


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "unit: fast unit tests")
    config.addinivalue_line("markers", "e2e: end-to-end tests running the CLI in a subprocess")
    config.addinivalue_line("markers", "slow: optimizer-backed or full-suite tests")
