import numpy as np
import pytest

from lhmvapor.master_equation import canonical_params
from lhmvapor.sweep import DEFAULT_GRID, group_index, sweep_detuning


@pytest.fixture(scope="session")
def params():
    return canonical_params()


@pytest.fixture(scope="session")
def default_table(params):
    table = sweep_detuning(params, DEFAULT_GRID)
    return group_index(table, params.omega_probe0, params.gamma_scale)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
