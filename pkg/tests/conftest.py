from __future__ import annotations

from pathlib import Path

import pytest

from mbounds.matrix import SquareMatrix
from mbounds.moments import new_sample

DATA = Path(__file__).resolve().parent.parent / "data"

NINE = [1, 2, 3, 4, 5, 6, 8, 9, 10]
FIVE = [10, 9, 8, 2, 1]
A1_ROWS = [[4, 0, 2, 3], [0, 5, 0, 1], [2, 0, 6, 3], [3, 1, 0, 7]]
SPREAD_ROWS = [
    [2, -1, -2, 0, 1],
    [2, 2, 1, 1, 2],
    [-2, 1, 1, 1, 1],
    [-1, 1, 2, 1, -1],
    [2, 0, 2, 0, 2],
]
# x^5 - 53x^3 - 24x^2 + 412x - 336, roots 7, 2, 1, -4, -6
QUINTIC = [1, 0, -53, -24, 412, -336]


@pytest.fixture
def nine():
    return new_sample(NINE)


@pytest.fixture
def five():
    return new_sample(FIVE)


@pytest.fixture
def a1():
    return SquareMatrix.from_rows(A1_ROWS)


@pytest.fixture
def spread_matrix():
    return SquareMatrix.from_rows(SPREAD_ROWS)


@pytest.fixture
def data_dir():
    return DATA

