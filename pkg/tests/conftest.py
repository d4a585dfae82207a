import pytest

from approxpls.graph import ConfigurationGraph, parse_graph


def graph(text: str):
    return parse_graph(text)


RING5 = "graph ring5\n" + "".join(f"node {i}\n" for i in range(5)) + \
    "".join(f"edge {i} {(i + 1) % 5}\n" for i in range(5))
TRI = "graph tri\nnode 0\nnode 1\nnode 2\nedge 0 1\nedge 1 2\nedge 0 2\n"


@pytest.fixture
def ring5():
    return parse_graph(RING5)


@pytest.fixture
def tri():
    return parse_graph(TRI)


def cfg(g, out=None):
    return ConfigurationGraph(g, out or {})
