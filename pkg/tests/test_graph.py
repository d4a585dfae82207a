import pytest

from approxpls.generators import metric_graph, random_graph, bipartite_graph
from approxpls.graph import (INFINITY, ConfigurationGraph, Edge, Graph, GraphError, NodeAttrs, check_metric,
                             is_bipartite, odd_girth, parse_assignment, parse_graph, serialize_assignment,
                             serialize_graph)

from conftest import RING5, TRI


def test_smallest_graph():
    g = parse_graph("node 0\nnode 1\nedge 0 1 w=3")
    assert (g.n, g.m) == (2, 1)
    assert g.edges[0].w == 3


def test_unknown_endpoint_reported_with_line():
    with pytest.raises(GraphError, match="unknown endpoint 7") as info:
        parse_graph("node 0\nnode 1\nedge 0 7")
    assert info.value.line == 3


@pytest.mark.parametrize("text,msg", [
    ("node 0\nnode 0\n", "duplicate node id 0"),
    ("node 0\nnode 1\nnode 2\nedge 0 1\n", "disconnected"),
    ("node 0\nbogus\n", "malformed line"),
    ("node 0\nnode 1\nedge 0 1\nedge 1 0\n", "multi-edge"),
])
def test_parse_errors(text, msg):
    with pytest.raises(GraphError, match=msg):
        parse_graph(text)


def test_ring_ports():
    g = parse_graph(RING5)
    for v in g.nodes:
        assert g.degree(v) == 2
        assert len(g.local_input(v).ports) == 2


def test_serialize_round_trip():
    g = bipartite_graph(6, 0.5, seed=3, W=4, node_w=3, b_max=2)
    h = parse_graph(serialize_graph(g))
    assert serialize_graph(h) == serialize_graph(g)
    out = {v: "10"[: v % 3] for v in g.nodes}
    assert parse_assignment(serialize_assignment(out)) == out


def test_odd_girth_examples():
    assert odd_girth(parse_graph(TRI)) == 3
    assert odd_girth(parse_graph(RING5)) == 5
    chord = parse_graph(RING5 + "edge 0 2\n")
    assert odd_girth(chord) == 3
    assert odd_girth(bipartite_graph(8, 0.5, seed=1)) == INFINITY


def test_bipartite_examples():
    ring4 = Graph(range(4), [Edge(i, (i + 1) % 4) for i in range(4)])
    ok, col = is_bipartite(ring4)
    assert ok and col[0] != col[1] and col[0] == col[2]
    assert is_bipartite(parse_graph(TRI)) == (False, None)
    tree = random_graph(8, 0.0, seed=5)
    ok, col = is_bipartite(tree)
    assert ok and all(col[e.u] != col[e.v] for e in tree.edges)


def test_check_metric():
    def k3(w):
        return Graph(range(3), [Edge(0, 1, w=w[0]), Edge(1, 2, w=w[1]), Edge(0, 2, w=w[2])])
    assert check_metric(k3((1, 1, 1)))
    assert not check_metric(k3((1, 1, 5)))
    pts = [0, 1, 3, 6]
    line = Graph(range(4), [Edge(u, v, w=abs(pts[u] - pts[v])) for u in range(4) for v in range(u + 1, 4)])
    assert check_metric(line)
    assert check_metric(metric_graph(6, seed=2))


def test_empty_output_is_input_view():
    g = parse_graph(TRI)
    cfg = ConfigurationGraph(g)
    assert all(cfg.output[v] == "" for v in g.nodes)
    with pytest.raises(GraphError):
        ConfigurationGraph(g, {0: "1"})


def test_weights_above_W_rejected():
    with pytest.raises(GraphError):
        Graph({0: NodeAttrs(w=5), 1: NodeAttrs()}, [Edge(0, 1)], W=3)
