from fractions import Fraction as F

import pytest

from approxpls.cover_match import (alt_distances, b_matching_dual, edge_cover_dual, int_distances,
                                   loose_nodes)
from approxpls.graph import INFINITY, ConfigurationGraph, Edge, Graph, NodeAttrs, parse_graph
from approxpls.gpls import ProverRefusal, exhaust_soundness, fuzz_soundness, proof_size, prove, verify
from approxpls.oracles import classify
from approxpls.problems import edge_set_output, edge_value_output
from approxpls.registry import build_scheme

from conftest import RING5, TRI


def _ring(n):
    return Graph(range(n), [Edge(i, (i + 1) % n) for i in range(n)], name=f"ring{n}")


def _idx(g, pairs):
    return frozenset(g.edge_index(u, v) for u, v in pairs)


def _cover_cfg(g, pairs):
    return ConfigurationGraph(g, edge_set_output(g, pairs))


def _b1(g):
    return Graph({v: NodeAttrs(b=1) for v in g.nodes}, g.edges, name=g.name)


# ------------------------------------------------------------ path distances

def test_int_on_ring():
    g = parse_graph(RING5)
    C = _idx(g, [(0, 1), (2, 3), (3, 4)])
    assert loose_nodes(g, C) == [3]
    d = int_distances(g, C)
    assert [d[v] for v in range(5)] == [2, 2, 1, 0, 1]


def test_int_on_doubly_covered_middle():
    g = Graph(range(3), [Edge(0, 1), Edge(1, 2)])
    d = int_distances(g, _idx(g, [(0, 1), (1, 2)]))
    assert [d[v] for v in range(3)] == [1, 0, 1]


def test_minimum_cover_of_odd_ring_has_a_loose_node():
    for n in (3, 5, 7, 9):
        g = _ring(n)
        C = _idx(g, [(i, i + 1) for i in range(0, n - 1, 2)] + [(n - 1, 0)])
        assert len(C) == (n + 1) // 2
        assert loose_nodes(g, C)


def test_alt_examples():
    t = _b1(parse_graph(TRI))
    d = alt_distances(t, {t.edge_index(0, 1): 1})
    assert [d[v] for v in range(3)] == [1, 1, 0]
    e = _b1(Graph(range(2), [Edge(0, 1)]))
    assert alt_distances(e, {0: 1}) == {0: INFINITY, 1: INFINITY}
    p = _b1(Graph(range(3), [Edge(0, 1), Edge(1, 2)]))
    d = alt_distances(p, {p.edge_index(0, 1): 1})
    assert [d[v] for v in range(3)] == [2, 1, 0]


# ---------------------------------------------------------------- edge cover

def test_edge_cover_dual_ring():
    g = parse_graph(RING5)
    y = edge_cover_dual(g, _idx(g, [(0, 1), (2, 3), (3, 4)]), 2)
    assert [y[v][0] for v in range(5)] == [F(1, 3), F(1, 3), F(2, 3), F(0), F(2, 3)]
    assert sum(y[v][0] for v in g.nodes) == 2


def test_edge_cover_apls_ring():
    g = parse_graph(RING5)
    s = build_scheme("edge-cover-apls", kappa=2)
    cfg = _cover_cfg(g, [(0, 1), (2, 3), (3, 4)])
    labels = prove(s, cfg)
    assert verify(s, cfg, labels).accept and proof_size(labels) == 2
    full = _cover_cfg(g, [e.key for e in g.edges])
    assert classify(s, full).family == "no"
    assert fuzz_soundness(s, full, 10_000, seed=0, family="no").accepts == 0


def test_edge_cover_kappa_one_is_one_bit():
    g = parse_graph(TRI)
    s = build_scheme("edge-cover-apls", kappa=1)
    cfg = _cover_cfg(g, [(0, 1), (1, 2)])
    labels = prove(s, cfg)
    assert verify(s, cfg, labels).accept and proof_size(labels) == 1


def test_edge_cover_bipartite():
    s = build_scheme("edge-cover-bipartite-pls")
    e = Graph(range(2), [Edge(0, 1)])
    cfg = _cover_cfg(e, [(0, 1)])
    lab = prove(s, cfg)
    assert verify(s, cfg, lab).accept and sorted(lab.values()) == ["0", "1"]
    r4 = _ring(4)
    cfg = _cover_cfg(r4, [(0, 1), (2, 3)])
    assert verify(s, cfg, prove(s, cfg)).accept
    bad = _cover_cfg(r4, [(0, 1), (1, 2), (2, 3)])
    assert classify(s, bad).family == "no"
    assert exhaust_soundness(s, bad, 1, family="no", stop_at_first=False).accepts == 0


def test_odd_ring_pls():
    s = build_scheme("edge-cover-ring-pls")
    r7 = _ring(7)
    opt = _cover_cfg(r7, [(0, 1), (2, 3), (4, 5), (5, 6)])
    assert verify(s, opt, prove(s, opt)).accept
    five = _cover_cfg(r7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    assert classify(s, five).family == "no"
    assert fuzz_soundness(s, five, 10_000, seed=1, family="no").accepts == 0
    r3 = _ring(3)
    cfg = _cover_cfg(r3, [(0, 1), (1, 2)])
    assert verify(s, cfg, prove(s, cfg)).accept


def test_odd_ring_dpls():
    r7 = ConfigurationGraph(_ring(7))
    for k in (0, 4):
        s = build_scheme("edge-cover-ring-dpls", k=k)
        assert verify(s, r7, prove(s, r7)).accept
    s = build_scheme("edge-cover-ring-dpls", k=5)
    assert classify(s, r7).family == "no"
    assert fuzz_soundness(s, r7, 10_000, seed=2, family="no").accepts == 0


def test_edge_cover_adpls_ring():
    cfg = ConfigurationGraph(parse_graph(RING5))
    s = build_scheme("edge-cover-adpls", kappa=2, k=3)
    assert verify(s, cfg, prove(s, cfg)).accept
    s = build_scheme("edge-cover-adpls", kappa=2, k=4)
    with pytest.raises(ProverRefusal):
        prove(s, cfg)
    s = build_scheme("edge-cover-adpls", kappa=2, k=5)
    assert classify(s, cfg).family == "no"
    assert fuzz_soundness(s, cfg, 5000, seed=3, family="no").accepts == 0


# ---------------------------------------------------------------- b-matching

def test_b_matching_dual_triangle():
    t = _b1(parse_graph(TRI))
    y = b_matching_dual(t, {t.edge_index(0, 1): 1}, 1)
    assert [y[v][0] for v in range(3)] == [1, 1, 0]


def test_bmatching_apls():
    s = build_scheme("bmatching-apls", kappa=1)
    t = _b1(parse_graph(TRI))
    cfg = ConfigurationGraph(t, edge_value_output(t, {t.edge_index(0, 1): 1}))
    labels = prove(s, cfg)
    assert verify(s, cfg, labels).accept and proof_size(labels) == 1
    p5 = _b1(Graph(range(5), [Edge(i, i + 1) for i in range(4)]))
    empty = ConfigurationGraph(p5, edge_value_output(p5, {}))
    assert classify(s, empty).family == "no"
    assert exhaust_soundness(s, empty, 1, family="no", stop_at_first=False).accepts == 0


def test_bmatching_bipartite():
    s = build_scheme("bmatching-bipartite-pls")
    e = _b1(Graph(range(2), [Edge(0, 1)]))
    cfg = ConfigurationGraph(e, edge_value_output(e, {0: 1}))
    assert verify(s, cfg, prove(s, cfg)).accept
    r4 = _b1(_ring(4))
    perfect = ConfigurationGraph(r4, edge_value_output(r4, {r4.edge_index(0, 1): 1, r4.edge_index(2, 3): 1}))
    assert verify(s, perfect, prove(s, perfect)).accept
    one = ConfigurationGraph(r4, edge_value_output(r4, {r4.edge_index(0, 1): 1}))
    assert classify(s, one).family == "no"
    assert exhaust_soundness(s, one, 1, family="no", stop_at_first=False).accepts == 0


def test_threshold_bipartite_versions():
    r4 = _b1(_ring(4))
    cfg = ConfigurationGraph(r4)
    s = build_scheme("bmatching-bipartite-dpls", k=2)
    assert verify(s, cfg, prove(s, cfg)).accept
    s = build_scheme("bmatching-bipartite-dpls", k=1)
    assert classify(s, cfg).family == "no"
    assert fuzz_soundness(s, cfg, 3000, seed=4, family="no").accepts == 0
    s = build_scheme("edge-cover-bipartite-dpls", k=2)
    assert verify(s, cfg, prove(s, cfg)).accept
