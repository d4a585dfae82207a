"""Maximum flow and maximum weight cut schemes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Set

from .certify import comparison_check, comparison_labels
from .graph import ConfigurationGraph, Graph, LocalInput
from .gpls import LabelAssignment, LocalView, ProverRefusal, Scheme, accepts
from .lp import StandardFormLP, make_vca_adpls
from .maxflow import Network
from .problems import (Kind, OutputError, decode_edge_values, decode_node_set, flow_net_in,
                       local_node_bit, local_port_values)


@dataclass(frozen=True)
class FlowState:
    f: Dict[int, int]          # edge index -> flow
    value: int


def _capacity(e) -> int:
    return e.c or 0


def _require_st(g: Graph) -> None:
    if not g.directed or g.source is None or g.sink is None or g.source == g.sink:
        raise ValueError("flow network needs a directed graph with distinct source and sink")


def max_flow(g: Graph) -> FlowState:
    _require_st(g)
    net = Network()
    for e in g.edges:
        net.add_arc(e.u, e.v, _capacity(e))
    value, flow, _ = net.max_flow(g.source, g.sink)
    # antiparallel arcs are excluded by the graph model, so arc flow is edge flow
    return FlowState({i: flow[(e.u, e.v)] for i, e in enumerate(g.edges)}, value)


def min_cut(g: Graph, flow: FlowState) -> FrozenSet[int]:
    """Source side of the residual graph of a maximum flow."""
    _require_st(g)
    reach: Set[int] = {g.source}
    stack = [g.source]
    while stack:
        x = stack.pop()
        for e in g.port_edges(x):
            i = g.edge_index(e.u, e.v)
            if e.u == x and flow.f[i] < _capacity(e) and e.v not in reach:
                reach.add(e.v)
                stack.append(e.v)
            elif e.v == x and flow.f[i] > 0 and e.u not in reach:
                reach.add(e.u)
                stack.append(e.u)
    return frozenset(reach)


def cut_capacity(g: Graph, side: Set[int] | FrozenSet[int]) -> int:
    return sum(_capacity(e) for e in g.edges if e.u in side and e.v not in side)


# ------------------------------------------------------------- flow LP

def flow_lp(g: Graph) -> StandardFormLP:
    """Edge columns plus the artificial ``(t, s)`` column maximised.

    Rows: one capacity row per edge (mapped to its tail), then one
    conservation row per node, ``in - out <= 0``.
    """
    _require_st(g)
    m = g.m
    A: Dict = {}
    b: List[Fraction] = []
    rows: List[int] = []
    for j, e in enumerate(g.edges):
        A[(j, j)] = Fraction(1)
        b.append(Fraction(_capacity(e)))
        rows.append(e.u)
    for i, v in enumerate(g.nodes):
        r = m + i
        for j, e in enumerate(g.edges):
            if e.v == v:
                A[(r, j)] = Fraction(1)
            elif e.u == v:
                A[(r, j)] = Fraction(-1)
        if v == g.source:
            A[(r, m)] = Fraction(1)
        if v == g.sink:
            A[(r, m)] = Fraction(-1)
        b.append(Fraction(0))
        rows.append(v)
    c = tuple([Fraction(0)] * m + [Fraction(1)])
    cols = tuple([e.key for e in g.edges] + [None])
    return StandardFormLP("max", A, tuple(b), c, tuple(rows), cols)


def flow_primal(cfg: ConfigurationGraph) -> List[Fraction]:
    g = cfg.graph
    f = decode_edge_values(cfg)
    x = [Fraction(f.get(j, 0)) for j in range(g.m)]
    return x + [Fraction(-flow_net_in(g, f, g.source))]


def flow_dual(g: Graph, labels: Mapping[int, str]) -> List[Fraction]:
    """Dual vector derived from cut bits; edge duals mark forward crossings."""
    side = {v: labels[v] == "1" for v in g.nodes}
    y = [Fraction(1 if side[e.u] and not side[e.v] else 0) for e in g.edges]
    return y + [Fraction(1 if side[v] else 0) for v in g.nodes]


# ------------------------------------------------------------- flow PLS

def _flow_universe(cfg: ConfigurationGraph) -> bool:
    g = cfg.graph
    if not g.directed or g.source is None or g.sink is None or g.source == g.sink:
        return False
    if sum(g.attrs(v).source for v in g.nodes) != 1 or sum(g.attrs(v).sink for v in g.nodes) != 1:
        return False
    try:
        decode_edge_values(cfg)
    except OutputError:
        return False
    return True


def _flow_network_universe(cfg: ConfigurationGraph) -> bool:
    g = cfg.graph
    return (g.directed and g.source is not None and g.sink is not None and g.source != g.sink
            and sum(g.attrs(v).source for v in g.nodes) == 1
            and sum(g.attrs(v).sink for v in g.nodes) == 1
            and all(cfg.output[v] == "" for v in g.nodes))


def _side_bits(view: LocalView) -> List[bool]:
    if len(view.label) != 1 or any(len(x) != 1 for x in view.nbr):
        raise ValueError("cut labels are single bits")
    return [x == "1" for x in view.nbr]


def flow_check(view: LocalView) -> bool:
    inp = view.inp
    nbr = _side_bits(view)
    mine = view.label == "1"
    if (inp.source and not mine) or (inp.sink and mine):
        return False
    x = local_port_values(inp, view.out)
    net_in = 0
    for j, port in enumerate(inp.ports):
        c = port.c or 0
        if not 0 <= x[j] <= c:
            return False
        tail, head = (mine, nbr[j]) if port.outgoing else (nbr[j], mine)
        if tail and not head and x[j] != c:
            return False
        if head and not tail and x[j] != 0:
            return False
        net_in += -x[j] if port.outgoing else x[j]
    if not (inp.source or inp.sink) and net_in != 0:
        return False
    return True


def make_flow_pls() -> Scheme:
    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        best = max_flow(g)
        side = min_cut(g, best)
        if strict:
            f = decode_edge_values(cfg)
            if flow_net_in(g, f, g.sink) != best.value:
                raise ProverRefusal("output flow is not maximum")
        return {v: "1" if v in side else "0" for v in g.nodes}

    return Scheme(
        name="flow-pls", kind="PLS", problem=Kind.MAX_FLOW.value,
        universe=_flow_universe, prover=prover, verifier=flow_check,
        forger=lambda cfg: prover(cfg, strict=False),
    )


def _cut_share(view: LocalView) -> int:
    nbr = _side_bits(view)
    if view.label != "1":
        return 0
    return sum((p.c or 0) for j, p in enumerate(view.inp.ports) if p.outgoing and not nbr[j])


def _cut_side_ok(view: LocalView) -> bool:
    _side_bits(view)
    mine = view.label == "1"
    return not ((view.inp.source and not mine) or (view.inp.sink and mine))


def make_flow_dpls(k: int) -> Scheme:
    def approx(cfg: ConfigurationGraph) -> LabelAssignment:
        g = cfg.graph
        side = min_cut(g, max_flow(g))
        return {v: "1" if v in side else "0" for v in g.nodes}

    return make_vca_adpls(
        name="flow-dpls", problem=Kind.MAX_FLOW.value, universe=_flow_network_universe,
        approx_prover=approx, approx_verifier=_cut_side_ok, lam=_cut_share,
        threshold=lambda view: k, alpha=Fraction(1), sense="max", k=k, kind="DPLS",
    )


# ------------------------------------------------------------- max cut

def _weights(inp: LocalInput) -> List[int]:
    return [1 if p.w is None else p.w for p in inp.ports]


def maxcut_check(view: LocalView) -> bool:
    mine = local_node_bit(view.inp, view.out)
    if view.label != ("1" if mine else "0"):
        return False
    nbr = _side_bits(view)
    w = _weights(view.inp)
    crossing = sum(wj for wj, b in zip(w, nbr) if b != mine)
    return 2 * crossing >= sum(w)


def local_search_cut(g: Graph) -> FrozenSet[int]:
    """Flip single nodes until every node has at least half its weight crossing."""
    side = {v: v == min(g.nodes) for v in g.nodes}
    changed = True
    while changed:
        changed = False
        for v in g.nodes:
            total = sum(g.weight(v, u) for u in g.neighbors(v))
            cross = sum(g.weight(v, u) for u in g.neighbors(v) if side[u] != side[v])
            if 2 * cross < total:
                side[v] = not side[v]
                changed = True
    return frozenset(v for v in g.nodes if side[v])


def _cut_universe(cfg: ConfigurationGraph) -> bool:
    g = cfg.graph
    return not g.directed and g.n >= 2 and all(len(cfg.output[v]) == 1 for v in g.nodes)


def make_maxcut_apls() -> Scheme:
    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        S = decode_node_set(cfg)
        labels = {v: "1" if v in S else "0" for v in cfg.graph.nodes}
        if strict:
            if not accepts(scheme, cfg, labels):
                raise ProverRefusal("cut fails the local half-weight test")
        return labels

    scheme = Scheme(
        name="maxcut-apls", kind="APLS", problem=Kind.MAX_CUT.value, alpha=Fraction(2),
        universe=_cut_universe, prover=prover, verifier=maxcut_check,
        forger=lambda cfg: prover(cfg, strict=False),
    )
    return scheme


def make_maxcut_adpls(k: int) -> Scheme:
    def h(inp: LocalInput) -> int:
        return -sum(_weights(inp))

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        return comparison_labels(g, {v: h(cfg.inputs[v]) for v in g.nodes}, -4 * k, strict=strict)

    return Scheme(
        name="maxcut-adpls", kind="ADPLS", problem=Kind.MAX_CUT.value, alpha=Fraction(2),
        universe=lambda cfg: not cfg.graph.directed and cfg.graph.n >= 2
        and all(cfg.output[v] == "" for v in cfg.graph.nodes),
        prover=prover,
        verifier=lambda view: comparison_check(view.inp.id, view.inp.id_bits, h(view.inp), -4 * k,
                                               view.label, view.nbr),
        forger=lambda cfg: prover(cfg, strict=False),
        params={"k": k, "sense": "max", "h": h},
        parts=lambda inp, lab: {"comparison": lab},
    )
