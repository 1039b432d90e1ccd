"""Fixtures partagées des tests"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra.liealg import build_gauge_basis
from src.core.config import ScenarioConfig
from src.core.numerics import make_rng
from src.geometry.grids import ball3_grid, sphere3_grid


@pytest.fixture
def rng():
    return make_rng(1234, 'tests')


@pytest.fixture(scope='session')
def su2():
    return build_gauge_basis(2, 'su')


@pytest.fixture(scope='session')
def su3():
    return build_gauge_basis(3, 'su')


@pytest.fixture(scope='session')
def s3_grid():
    return sphere3_grid(12)


@pytest.fixture(scope='session')
def b3_grid():
    return ball3_grid(12)


@pytest.fixture
def scenario_config():
    """Configuration réduite (quad_order minimal) pour les suites"""
    def build(scenario: str, **overrides) -> ScenarioConfig:
        params = dict(scenario=scenario, quad_order=8, tolerance=1e-6, seed=0, gauge_p=2, matrix_samples=10)
        params.update(overrides)
        return ScenarioConfig(**params)
    return build
