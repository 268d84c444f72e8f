import pytest

from qclique.graph import builtin_graph


@pytest.fixture(scope="session")
def g4():
    return builtin_graph("g4")


@pytest.fixture(scope="session")
def g6():
    return builtin_graph("g6")


@pytest.fixture(scope="session")
def star4():
    return builtin_graph("star4")
