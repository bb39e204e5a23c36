import numpy as np
import pytest

import finhilbert as fh


@pytest.fixture(scope="session")
def grid_n():
    return 512


@pytest.fixture(scope="session")
def one(grid_n):
    return fh.const_fn(1.0, grid_n)


@pytest.fixture(scope="session")
def xfun(grid_n):
    return fh.poly_fn([0, 1], grid_n)


@pytest.fixture(scope="session")
def invw(grid_n):
    return fh.inv_weight_fn(grid_n)


@pytest.fixture(scope="session")
def wfun(grid_n):
    return fh.weight_fn(grid_n)


@pytest.fixture(scope="session")
def lp15():
    return fh.SpaceSpec.lp(1.5)


@pytest.fixture(scope="session")
def lp3():
    return fh.SpaceSpec.lp(3)


def interval_set(*pairs):
    return fh.IntervalSet(tuple(pairs))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
