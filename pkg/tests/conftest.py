from itertools import combinations

import pytest

from arrangelab.graphcomb import (
    OrderedGraph,
    complete_graph,
    cycle_graph,
    fan_graph,
    path_graph,
)


def single_vertex():
    return OrderedGraph.from_edges(["1"], [])


CHORDAL = {
    "K3": complete_graph(3),
    "K4": complete_graph(4),
    "P3": path_graph(3),
    "P4": path_graph(4),
    "F4": fan_graph(4),
}


def random_graph(n, mask):
    pairs = list(combinations(range(1, n + 1), 2))
    return OrderedGraph.from_edges(range(1, n + 1), [p for i, p in enumerate(pairs) if mask >> i & 1])


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)
