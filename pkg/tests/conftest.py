import numpy as np
import pytest

from coclosed import build_graph

from helpers import K4_EDGES, TWO_TRIANGLE_EDGES


@pytest.fixture
def two_triangle():
    return build_graph(4, TWO_TRIANGLE_EDGES)


@pytest.fixture
def k4():
    return build_graph(4, K4_EDGES)


@pytest.fixture
def tt_field():
    return np.array([5.0, 0.0, 0.0, 0.0, 0.0])
