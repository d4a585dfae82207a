from fractions import Fraction as F

from approxpls.cover_match import edge_cover_dual, edge_cover_family
from approxpls.graph import ConfigurationGraph, Edge, Graph, parse_graph
from approxpls.lp import (StandardFormLP, check_dual_feasible, check_primal_feasible,
                          check_relaxed_slackness, dual_vector)
from approxpls.problems import edge_set_output

from conftest import RING5, TRI


def _pair(g, C, kappa):
    fam = edge_cover_family()
    lp = fam.build(g)
    cfg = ConfigurationGraph(g, edge_set_output(g, C))
    x = fam.primal(cfg)
    y = dual_vector(lp, edge_cover_dual(g, frozenset(g.edge_index(u, v) for u, v in C), kappa))
    return lp, x, y


def test_zero_vector_feasible_for_nonpositive_rows():
    lp = StandardFormLP("min", {(0, 0): F(1), (1, 1): F(2)}, (F(0), F(-1)), (F(1), F(1)), (0, 1), (0, 1))
    assert check_primal_feasible(lp, [F(0), F(0)])


def test_cover_indicator_feasible():
    g = parse_graph(RING5)
    lp, x, _ = _pair(g, [(0, 1), (2, 3), (3, 4)], 2)
    assert check_primal_feasible(lp, x)
    fam = edge_cover_family()
    x = fam.primal(ConfigurationGraph(g, edge_set_output(g, [(0, 1), (2, 3)])))
    assert not check_primal_feasible(lp, x)


def test_all_ones_dual_infeasible_on_triangle():
    lp = edge_cover_family().build(parse_graph(TRI))
    assert not check_dual_feasible(lp, [F(1)] * 3)


def test_strong_duality_single_edge():
    g = Graph(range(2), [Edge(0, 1)])
    lp = edge_cover_family().build(g)
    x, y = [F(1)], [F(1), F(0)]
    assert check_primal_feasible(lp, x) and check_dual_feasible(lp, y)
    assert lp.primal_value(x) == lp.dual_value(y)
    assert check_relaxed_slackness(lp, x, y, F(1), F(1))


def test_ring_pair_needs_beta_three_halves():
    g = parse_graph(RING5)
    lp, x, y = _pair(g, [(0, 1), (2, 3), (3, 4)], 2)
    assert y == [F(1, 3), F(1, 3), F(2, 3), F(0), F(2, 3)]
    assert check_dual_feasible(lp, y)
    assert check_relaxed_slackness(lp, x, y, F(3, 2), F(1))
    assert not check_relaxed_slackness(lp, x, y, F(1), F(1))
    assert lp.primal_value(x) <= F(3, 2) * lp.dual_value(y)
