import pytest

from approxpls.certify import (comparison_bound, comparison_check, comparison_labels, comparison_prove,
                               decode_cmp, encode_cmp, hamiltonian_feasibility_scheme, le_colors,
                               make_comparison_scheme, mst_certify_scheme, terminal_tree_feasibility_scheme,
                               two_candidate_le_scheme)
from approxpls.graph import ConfigurationGraph, Edge, Graph, NodeAttrs, parse_graph
from approxpls.gpls import ProverRefusal, exhaust_soundness, fuzz_soundness, prove, verify
from approxpls.oracles import classify
from approxpls.problems import edge_set_output, node_set_output

from conftest import RING5

PATH123 = "graph p\nnode 1\nnode 2\nnode 3\nedge 1 2\nedge 2 3\n"
H = {1: 5, 2: -2, 3: 4}


def _check_all(g, labels, h, K):
    return {v: comparison_check(v, g.id_bits, h[v], K, labels[v], [labels[u] for u in g.neighbors(v)])
            for v in g.nodes}


# ---------------------------------------------------------------- comparison

def test_comparison_path_example():
    g = parse_graph(PATH123)
    labels = comparison_prove(g, H, 6)
    aggs = tuple(decode_cmp(labels[v], g.id_bits).agg for v in (1, 2, 3))
    assert aggs == (7, 2, 4)
    assert decode_cmp(labels[1], g.id_bits).x == 1   # root is its own parent
    assert all(_check_all(g, labels, H, 6).values())


def test_comparison_refuses_below_threshold():
    g = parse_graph(PATH123)
    with pytest.raises(ProverRefusal):
        comparison_prove(g, H, 8)


def test_comparison_single_node():
    g = Graph([0], [])
    labels = comparison_prove(g, {0: 0}, 0)
    assert comparison_check(0, g.id_bits, 0, 0, labels[0], [])


def test_comparison_corrupt_agg_caught_locally():
    g = parse_graph(PATH123)
    labels = comparison_prove(g, H, 6)
    for v in g.nodes:
        lab = decode_cmp(labels[v], g.id_bits)
        for delta in (-1, 1, 3):
            bad = dict(labels)
            bad[v] = encode_cmp(type(lab)(lab.own, lab.x, lab.y, lab.agg + delta), g.id_bits)
            ok = _check_all(g, bad, H, 6)
            parent = lab.x
            assert not ok[v] or not ok[parent]


def test_comparison_two_roots_rejected():
    g = parse_graph(PATH123)
    h, K = {1: -1, 2: 0, 3: -1}, -1
    idw = g.id_bits
    CL = type(decode_cmp(comparison_labels(g, h, K, strict=False)[1], idw))
    # nodes 1 and 3 both claim to be the root; with K <= 0 the layout is (own, root, parent, agg)
    labels = {1: encode_cmp(CL(1, 1, 1, -1), idw), 2: encode_cmp(CL(2, 3, 3, 0), idw),
              3: encode_cmp(CL(3, 3, 3, -1), idw)}
    ok = _check_all(g, labels, h, K)
    assert not (ok[1] and ok[2])


def test_comparison_no_instance_fuzzed():
    g = parse_graph(PATH123)
    s = make_comparison_scheme(lambda inp, out: H[inp.id], 8)
    cfg = ConfigurationGraph(g)
    assert classify(s, cfg).family == "no"
    rep = fuzz_soundness(s, cfg, 4000, seed=1, family="no")
    assert rep.accepts == 0
    forged = s.forger(cfg)
    assert not verify(s, cfg, forged).accept


def test_comparison_size_bound():
    g = parse_graph(PATH123)
    labels = comparison_prove(g, H, 6)
    assert max(len(x) for x in labels.values()) <= comparison_bound(3, 3)


# ------------------------------------------------------------ leader election

def _ring(n, candidates):
    attrs = {v: NodeAttrs(candidate=v in candidates) for v in range(n)}
    return Graph(attrs, [Edge(i, (i + 1) % n) for i in range(n)])


def test_le_three_ring():
    g = _ring(3, {0, 1})
    s = two_candidate_le_scheme()
    cfg = ConfigurationGraph(g, node_set_output(g, [0]))
    labels = prove(s, cfg)
    assert labels == le_colors(g, 0)
    assert sorted(labels.values()) == ["00", "01", "10"] and labels[0] == "10"
    assert verify(s, cfg, labels).accept


@pytest.mark.parametrize("leaders", [[0, 1], []])
def test_le_bad_elections_rejected_exhaustively(leaders):
    g = _ring(5, {0, 1})
    s = two_candidate_le_scheme()
    cfg = ConfigurationGraph(g, node_set_output(g, leaders))
    rep = exhaust_soundness(s, cfg, 2, family="no", stop_at_first=False)
    assert rep.accepts == 0


def test_le_non_candidate_leader():
    g = _ring(5, {0, 1})
    s = two_candidate_le_scheme()
    cfg = ConfigurationGraph(g, node_set_output(g, [3]))
    assert not verify(s, cfg, le_colors(g, 3)).accept


# ---------------------------------------------------------------------- MST

def _ring4():
    return Graph(range(4), [Edge(0, 1, w=1), Edge(1, 2, w=2), Edge(2, 3, w=3), Edge(3, 0, w=4)])


def test_mst_star():
    g = Graph(range(5), [Edge(0, i, w=i) for i in range(1, 5)])
    s = mst_certify_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [e.key for e in g.edges]))
    assert verify(s, cfg, prove(s, cfg)).accept


def test_mst_ring_trees():
    g = _ring4()
    s = mst_certify_scheme()
    good = ConfigurationGraph(g, edge_set_output(g, [(0, 1), (1, 2), (2, 3)]))
    assert verify(s, good, prove(s, good)).accept
    bad = ConfigurationGraph(g, edge_set_output(g, [(0, 1), (1, 2), (3, 0)]))
    assert classify(s, bad).family == "no"
    with pytest.raises(ProverRefusal):
        prove(s, bad)
    assert fuzz_soundness(s, bad, 3000, seed=2, family="no").accepts == 0


def test_mst_single_edge():
    g = Graph(range(2), [Edge(0, 1, w=1)])
    s = mst_certify_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [(0, 1)]))
    assert verify(s, cfg, prove(s, cfg)).accept


# --------------------------------------------------------------- Hamiltonian

def test_hamiltonian_ring():
    g = parse_graph(RING5)
    s = hamiltonian_feasibility_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [e.key for e in g.edges]))
    assert verify(s, cfg, prove(s, cfg)).accept


def _two_triangles():
    pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3), (0, 5)]
    g = Graph(range(6), [Edge(u, v) for u, v in pairs])
    return g, ConfigurationGraph(g, edge_set_output(g, pairs[:6]))


def test_hamiltonian_two_triangles_rejected():
    g, cfg = _two_triangles()
    s = hamiltonian_feasibility_scheme()
    assert classify(s, cfg).family == "no"
    assert exhaust_soundness(s, cfg, 3, family="no").accepts == 0
    assert fuzz_soundness(s, cfg, 3000, seed=3, family="no").accepts == 0
    assert not verify(s, cfg, s.forger(cfg)).accept


def test_hamiltonian_degree_one_node_rejects():
    g = parse_graph(RING5)
    s = hamiltonian_feasibility_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [(0, 1), (1, 2), (2, 3), (3, 4)]))
    v = verify(s, cfg, s.forger(cfg))
    assert 0 in v.rejecting() or 4 in v.rejecting()


# ------------------------------------------------------------- terminal tree

def test_terminal_tree_star():
    attrs = {0: NodeAttrs(), **{i: NodeAttrs(terminal=True) for i in range(1, 4)}}
    g = Graph(attrs, [Edge(0, i) for i in range(1, 4)])
    s = terminal_tree_feasibility_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [e.key for e in g.edges]))
    assert verify(s, cfg, prove(s, cfg)).accept


def test_terminal_tree_cycle_rejected():
    attrs = {v: NodeAttrs(terminal=v in (0, 2)) for v in range(4)}
    g = Graph(attrs, [Edge(i, (i + 1) % 4) for i in range(4)])
    s = terminal_tree_feasibility_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [e.key for e in g.edges]))
    assert classify(s, cfg).family == "no"
    assert fuzz_soundness(s, cfg, 3000, seed=5, family="no").accepts == 0


def test_terminal_outside_tree_rejects_itself():
    attrs = {v: NodeAttrs(terminal=v in (0, 3)) for v in range(4)}
    g = Graph(attrs, [Edge(0, 1), Edge(1, 2), Edge(2, 3)])
    s = terminal_tree_feasibility_scheme()
    cfg = ConfigurationGraph(g, edge_set_output(g, [(0, 1)]))
    assert 3 in verify(s, cfg, s.forger(cfg)).rejecting()
