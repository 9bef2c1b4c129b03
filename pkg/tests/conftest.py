import pytest

from src.core.generators import (
    complete_bipartite_graph, complete_graph, cycle_graph, path_graph, petersen_graph, star_graph,
)
from src.core.graph import build_graph


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="Run exact searches on reduced graphs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k5():
    return complete_graph(5)


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def k44():
    return complete_bipartite_graph(4, 4)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def claw():
    return star_graph(3)


@pytest.fixture
def two_p2():
    return build_graph(4, [(0, 1), (2, 3)])


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def p5():
    return path_graph(5)
