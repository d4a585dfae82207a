from fractions import Fraction as F
from math import log

import pytest

from approxpls.bits import nat, pack, unpack
from approxpls.graph import ConfigurationGraph, Edge, Graph, NodeAttrs
from approxpls.gpls import ProverRefusal, fuzz_soundness, prove, verify
from approxpls.oracles import classify, opt_value
from approxpls.problems import Kind, edge_set_output, node_set_output
from approxpls.registry import build_scheme
from approxpls.vca import ds_alpha, ds_greedy, harmonic, lcm_upto, vc_approx


def _weighted_edge(a, b):
    return Graph({0: NodeAttrs(w=a), 1: NodeAttrs(w=b)}, [Edge(0, 1)])


def _star(center_w, leaf_w, leaves):
    attrs = {0: NodeAttrs(w=center_w), **{i: NodeAttrs(w=leaf_w) for i in range(1, leaves + 1)}}
    return Graph(attrs, [Edge(0, i) for i in range(1, leaves + 1)])


def _k3():
    return Graph(range(3), [Edge(0, 1, w=1), Edge(1, 2, w=1), Edge(0, 2, w=1)])


def _collinear(terminals=()):
    attrs = {v: NodeAttrs(terminal=v in terminals) for v in range(4)}
    return Graph(attrs, [Edge(u, v, w=v - u) for u in range(4) for v in range(u + 1, 4)])


def _accepts(s, cfg):
    return verify(s, cfg, prove(s, cfg)).accept


def _rejects_everything(s, cfg, trials=3000, seed=0):
    assert classify(s, cfg).family == "no"
    assert not verify(s, cfg, s.forger(cfg)).accept
    return fuzz_soundness(s, cfg, trials, seed=seed, family="no").accepts == 0


# --------------------------------------------------------------- vertex cover

def test_vc_trace_single_edge():
    tr = vc_approx(_weighted_edge(3, 5))
    assert tr.U == {0}
    assert tr.residual == {0: 3, 1: 2}
    assert tr.charged[0] == 1


def test_vc_trace_star():
    g = _star(1, 10, 4)
    tr = vc_approx(g)
    assert tr.U == {0}
    assert opt_value(Kind.VERTEX_COVER, g)[0] == 1


def test_vc_adpls_thresholds():
    cfg = ConfigurationGraph(_weighted_edge(3, 5))
    for k in (0, 3):
        assert _accepts(build_scheme("vc-adpls", k=k), cfg)
    assert _rejects_everything(build_scheme("vc-adpls", k=7), cfg)


def test_vc_apls_round_trip():
    g = _star(1, 10, 3)
    s = build_scheme("vc-apls")
    assert _accepts(s, ConfigurationGraph(g, node_set_output(g, [0])))
    far = ConfigurationGraph(g, node_set_output(g, [1, 2, 3]))   # f = 30 > 2 * OPT
    assert _rejects_everything(s, far)


# ------------------------------------------------------------- dominating set

def test_ds_trace_examples():
    tr = ds_greedy(_star(1, 10, 3))
    assert tr.U == {0} and set(tr.d.values()) == {F(1, 4)}
    tr = ds_greedy(_weighted_edge(1, 1))
    assert tr.U == {0} and tr.d == {0: F(1, 2), 1: F(1, 2)}
    tr = ds_greedy(Graph({0: NodeAttrs(w=7)}, []))
    assert tr.U == {0} and tr.d == {0: F(7)}


def test_harmonic_helpers():
    assert harmonic(4) == F(25, 12)
    assert lcm_upto(6) == 60
    assert ds_alpha(4) == pytest.approx(log(4) + 1)


def test_ds_adpls_star():
    cfg = ConfigurationGraph(_star(1, 10, 3))
    assert _accepts(build_scheme("ds-adpls", k=1), cfg)
    assert _rejects_everything(build_scheme("ds-adpls", k=10), cfg)


def test_ds_n_claim_mismatch():
    g = _star(1, 10, 3)
    cfg = ConfigurationGraph(g)
    s = build_scheme("ds-adpls", k=1)
    labels = prove(s, cfg)
    approx, comp = unpack(labels[2], 2)
    fields = unpack(approx, 5)
    fields[2] = nat(5)
    bad = dict(labels)
    bad[2] = pack([pack(fields), comp])
    v = verify(s, cfg, bad)
    assert not v.accept and {0, 2} & set(v.rejecting())


def test_ds_apls():
    g = _star(1, 10, 3)
    s = build_scheme("ds-apls")
    assert _accepts(s, ConfigurationGraph(g, node_set_output(g, [0])))
    assert _rejects_everything(s, ConfigurationGraph(g, node_set_output(g, [0, 1, 2, 3])))


# ---------------------------------------------------------------------- TSP

def test_tsp_adpls_triangle():
    cfg = ConfigurationGraph(_k3())
    assert opt_value(Kind.TSP, _k3())[0] == 3
    assert _accepts(build_scheme("tsp-adpls", k=3), cfg)
    assert _accepts(build_scheme("tsp-adpls", k=4), cfg)
    with pytest.raises(ProverRefusal):
        prove(build_scheme("tsp-adpls", k=5), cfg)
    assert _rejects_everything(build_scheme("tsp-adpls", k=9), cfg)


def test_tsp_collinear():
    g = _collinear()
    assert opt_value(Kind.TSP, g)[0] == 6
    assert _accepts(build_scheme("tsp-adpls", k=6), ConfigurationGraph(g))


def test_tsp_apls():
    g = _collinear()
    s = build_scheme("tsp-apls")
    assert _accepts(s, ConfigurationGraph(g, edge_set_output(g, [(0, 1), (1, 2), (2, 3), (0, 3)])))
    worst = ConfigurationGraph(g, edge_set_output(g, [(0, 2), (1, 2), (1, 3), (0, 3)]))
    assert classify(s, worst).family in ("gap", "no")


# ------------------------------------------------------------------ Steiner

def test_steiner_triangle():
    g = Graph({0: NodeAttrs(terminal=True), 1: NodeAttrs(terminal=True), 2: NodeAttrs()},
              [Edge(0, 1, w=1), Edge(1, 2, w=1), Edge(0, 2, w=1)])
    assert _accepts(build_scheme("steiner-adpls", k=1), ConfigurationGraph(g))


def test_steiner_collinear():
    g = _collinear(terminals=(0, 3))
    assert opt_value(Kind.STEINER, g)[0] == 3
    cfg = ConfigurationGraph(g)
    assert _accepts(build_scheme("steiner-adpls", k=3), cfg)
    assert _rejects_everything(build_scheme("steiner-adpls", k=7), cfg)
    s = build_scheme("steiner-apls")
    assert _accepts(s, ConfigurationGraph(g, edge_set_output(g, [(0, 3)])))
    assert _accepts(s, ConfigurationGraph(g, edge_set_output(g, [(0, 1), (1, 2), (2, 3)])))
