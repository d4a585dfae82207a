import pytest

from approxpls.generators import random_graph
from approxpls.graph import ConfigurationGraph, Edge, Graph, NodeAttrs
from approxpls.oracles import NODE_BUDGET, OracleBudgetError, classify, mst_edge_set, opt_value
from approxpls.problems import Kind, edge_set_output
from approxpls.registry import build_scheme


def _ring(n):
    return Graph(range(n), [Edge(i, (i + 1) % n) for i in range(n)])


def test_opt_examples():
    assert opt_value(Kind.EDGE_COVER, _ring(5))[0] == 3
    tri = Graph({v: NodeAttrs(b=1) for v in range(3)}, [Edge(0, 1), Edge(1, 2), Edge(0, 2)])
    assert opt_value(Kind.B_MATCHING, tri)[0] == 1
    k3 = Graph(range(3), [Edge(0, 1, w=1), Edge(1, 2, w=1), Edge(0, 2, w=1)])
    assert opt_value(Kind.TSP, k3)[0] == 3


def test_witnesses_are_optimal_outputs():
    g = _ring(7)
    val, out = opt_value(Kind.EDGE_COVER, g)
    s = build_scheme("edge-cover-apls", kappa=3)
    assert val == 4 and classify(s, ConfigurationGraph(g, out)).family == "yes"


def test_classify_ring_covers():
    g = _ring(5)
    s = build_scheme("edge-cover-apls", kappa=2)

    def fam(pairs):
        return classify(s, ConfigurationGraph(g, edge_set_output(g, pairs))).family

    assert fam([(0, 1), (2, 3), (3, 4)]) == "yes"
    assert fam([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]) == "no"
    assert fam([(0, 1), (1, 2), (2, 3), (3, 4)]) == "gap"
    assert fam([(0, 1), (2, 3)]) == "no"      # not a cover


def test_classify_thresholds():
    cfg = ConfigurationGraph(_ring(5))
    assert classify(build_scheme("edge-cover-adpls", kappa=2, k=3), cfg).family == "yes"
    assert classify(build_scheme("edge-cover-adpls", kappa=2, k=4), cfg).family == "gap"
    assert classify(build_scheme("edge-cover-adpls", kappa=2, k=5), cfg).family == "no"


def test_mst_oracle():
    g = Graph(range(4), [Edge(0, 1, w=1), Edge(1, 2, w=2), Edge(2, 3, w=3), Edge(3, 0, w=4)])
    assert mst_edge_set(g) == {0, 1, 2}


def test_budget():
    big = random_graph(NODE_BUDGET + 1, 0.2, seed=0)
    with pytest.raises(OracleBudgetError):
        opt_value(Kind.EDGE_COVER, big)
