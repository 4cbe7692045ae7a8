import logging

import numpy as np
import pytest

from src.sphframes.grid import SpherePoint
from src.sphframes.grid import build_grid

_GRIDS = {}


def grid_of(N):
    """Кэшированная сетка порядка N (сетки неизменяемы)."""
    if N not in _GRIDS:
        _GRIDS[N] = build_grid(N)
    return _GRIDS[N]


@pytest.fixture
def rng():
    """Детерминированный генератор случайных чисел."""
    return np.random.default_rng(20240521)


@pytest.fixture
def grid2():
    return grid_of(2)


@pytest.fixture
def grid3():
    return grid_of(3)


@pytest.fixture
def grid4():
    return grid_of(4)


@pytest.fixture
def grid8():
    return grid_of(8)


def random_points(rng, count):
    """count случайных точек на сфере (нормированные гауссовы векторы)."""
    raw = rng.standard_normal((count, 3))
    return raw / np.linalg.norm(raw, axis=1)[:, None]


@pytest.fixture
def sphere_points(rng):
    """Десять случайных точек вне сетки как массив (10, 3)."""
    return random_points(rng, 10)


@pytest.fixture
def random_point(rng):
    """Одна случайная SpherePoint."""
    return SpherePoint.from_vector(rng.standard_normal(3))


@pytest.fixture(autouse=True)
def _reset_package_logger():
    """CLI вешает обработчик на логгер пакета; снимаем его после теста."""
    yield
    package_logger = logging.getLogger("src.sphframes")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)
