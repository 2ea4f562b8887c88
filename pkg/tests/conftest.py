import math

import numpy as np
import pytest

from threesq import spatial


@pytest.fixture(scope="session")
def octahedron():
    return spatial.unit_shell(1)


@pytest.fixture(scope="session")
def shell5():
    return spatial.unit_shell(5)


@pytest.fixture(scope="session")
def antipodal_pair():
    return spatial.UnitPointSet(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))


@pytest.fixture(scope="session")
def cube():
    pts = np.array(
        [[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)],
        dtype=float,
    ) / math.sqrt(3)
    return spatial.UnitPointSet(pts)
