import pytest

from approxpls.graph import ConfigurationGraph, parse_graph
from approxpls.problems import (Kind, OutputError, decode_edge_set, decode_edge_values, edge_set_output,
                                edge_value_output, feasible, objective, validate_output)

from conftest import RING5, TRI


def test_matching_output_on_two_nodes():
    g = parse_graph("graph p W=1\nnode 0 b=1\nnode 1 b=1\nedge 0 1\n")
    out = edge_value_output(g, {0: 1})
    assert out == {0: "1", 1: "1"}
    assert decode_edge_values(ConfigurationGraph(g, out)) == {0: 1}


def test_ring_cover_round_trip():
    g = parse_graph(RING5)
    C = [(0, 1), (2, 3), (3, 4)]
    cfg = ConfigurationGraph(g, edge_set_output(g, C))
    assert decode_edge_set(cfg) == {g.edge_index(u, v) for u, v in C}
    assert validate_output(Kind.EDGE_COVER, cfg)
    assert objective(Kind.EDGE_COVER, cfg) == 3


def test_matching_violating_b():
    g = parse_graph("graph t W=1\nnode 0 b=1\nnode 1 b=1\nnode 2 b=1\nedge 0 1\nedge 1 2\nedge 0 2\n")
    cfg = ConfigurationGraph(g, edge_value_output(g, {0: 1, 2: 1}))
    assert not feasible(Kind.B_MATCHING, cfg)


def test_saturated_two_node_flow():
    g = parse_graph("graph f directed W=3\nnode 0 source\nnode 1 sink\nedge 0 1 c=3\n")
    cfg = ConfigurationGraph(g, edge_value_output(g, {0: 3}))
    assert feasible(Kind.MAX_FLOW, cfg)
    assert objective(Kind.MAX_FLOW, cfg) == 3


def test_endpoint_disagreement_is_an_output_error():
    g = parse_graph(TRI)
    out = edge_set_output(g, [(0, 1)])
    out[1] = "00"
    with pytest.raises(OutputError):
        decode_edge_set(ConfigurationGraph(g, out))


def test_wrong_output_width():
    g = parse_graph(TRI)
    with pytest.raises(OutputError):
        feasible(Kind.VERTEX_COVER, ConfigurationGraph(g, {0: "1", 1: "11", 2: "0"}))
