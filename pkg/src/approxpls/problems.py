"""Output encodings, feasibility and objective values per problem kind.

Edge-valued outputs are stored at both endpoints, one field per port:
a single bit for edge sets (covers, tours, trees) and ``wbits`` bits per
port for integer values (b-matching multiplicities, flows).  Node-valued
outputs are a single bit.  An edge-valued output whose two endpoint
copies disagree is undecodable.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Mapping, Set, Tuple

from .bits import DecodeError, read_uint, uint
from .graph import ConfigurationGraph, Graph, GraphError, LocalInput


class Kind(str, Enum):
    EDGE_COVER = "edge_cover"
    B_MATCHING = "b_matching"
    VERTEX_COVER = "vertex_cover"
    DOMINATING_SET = "dominating_set"
    TSP = "tsp"
    STEINER = "steiner"
    MAX_FLOW = "max_flow"
    MAX_CUT = "max_cut"
    MST = "mst"
    LEADER = "leader"


MINIMIZE = {Kind.EDGE_COVER, Kind.VERTEX_COVER, Kind.DOMINATING_SET, Kind.TSP,
            Kind.STEINER, Kind.MST}
MAXIMIZE = {Kind.B_MATCHING, Kind.MAX_FLOW, Kind.MAX_CUT}

EDGE_SET_KINDS = {Kind.EDGE_COVER, Kind.TSP, Kind.STEINER, Kind.MST}
EDGE_VALUE_KINDS = {Kind.B_MATCHING, Kind.MAX_FLOW}
NODE_SET_KINDS = {Kind.VERTEX_COVER, Kind.DOMINATING_SET, Kind.MAX_CUT, Kind.LEADER}


class OutputError(GraphError):
    """Output assignment cannot be decoded for the requested kind."""


def sense(kind: Kind) -> str:
    return "min" if kind in MINIMIZE else "max"


# ------------------------------------------------------------ local decoding

def local_port_bits(inp: LocalInput, bits: str) -> Tuple[bool, ...]:
    if len(bits) != inp.deg:
        raise DecodeError("output length differs from degree")
    return tuple(ch == "1" for ch in bits)


def local_port_values(inp: LocalInput, bits: str) -> Tuple[int, ...]:
    w = inp.wbits
    if len(bits) != w * inp.deg:
        raise DecodeError("output length differs from degree * wbits")
    return tuple(read_uint(bits[i * w:(i + 1) * w]) for i in range(inp.deg))


def local_node_bit(inp: LocalInput, bits: str) -> bool:
    if len(bits) != 1:
        raise DecodeError("node output must be one bit")
    return bits == "1"


# ----------------------------------------------------------- global codecs

def wbits(g: Graph) -> int:
    return max(1, g.W.bit_length())


def edge_set_output(g: Graph, edges: Iterable[Tuple[int, int]]) -> Dict[int, str]:
    chosen = {g.edge_index(u, v) for u, v in edges}
    return {
        v: "".join("1" if g.edge_index(v, u) in chosen else "0" for u in g.neighbors(v))
        for v in g.nodes
    }


def edge_value_output(g: Graph, values: Mapping[int, int]) -> Dict[int, str]:
    """``values`` maps edge index to an integer in ``0..W``."""
    w = wbits(g)
    return {
        v: "".join(uint(values.get(g.edge_index(v, u), 0), w) for u in g.neighbors(v))
        for v in g.nodes
    }


def node_set_output(g: Graph, nodes: Iterable[int]) -> Dict[int, str]:
    chosen = set(nodes)
    return {v: "1" if v in chosen else "0" for v in g.nodes}


def decode_edge_set(cfg: ConfigurationGraph) -> FrozenSet[int]:
    g = cfg.graph
    marks: Dict[int, Set[bool]] = {}
    for v in g.nodes:
        try:
            bits = local_port_bits(cfg.inputs[v], cfg.output[v])
        except DecodeError as exc:
            raise OutputError(f"node {v}: {exc}") from None
        for u, b in zip(g.neighbors(v), bits):
            marks.setdefault(g.edge_index(v, u), set()).add(b)
    if any(len(s) > 1 for s in marks.values()):
        raise OutputError("endpoints disagree on an edge")
    return frozenset(i for i, s in marks.items() if True in s)


def decode_edge_values(cfg: ConfigurationGraph) -> Dict[int, int]:
    g = cfg.graph
    vals: Dict[int, Set[int]] = {}
    for v in g.nodes:
        try:
            got = local_port_values(cfg.inputs[v], cfg.output[v])
        except DecodeError as exc:
            raise OutputError(f"node {v}: {exc}") from None
        for u, x in zip(g.neighbors(v), got):
            vals.setdefault(g.edge_index(v, u), set()).add(x)
    if any(len(s) > 1 for s in vals.values()):
        raise OutputError("endpoints disagree on an edge")
    return {i: next(iter(s)) for i, s in vals.items()}


def decode_node_set(cfg: ConfigurationGraph) -> FrozenSet[int]:
    out = set()
    for v in cfg.graph.nodes:
        try:
            if local_node_bit(cfg.inputs[v], cfg.output[v]):
                out.add(v)
        except DecodeError as exc:
            raise OutputError(f"node {v}: {exc}") from None
    return frozenset(out)


def decode(kind: Kind, cfg: ConfigurationGraph):
    if kind in EDGE_SET_KINDS:
        return decode_edge_set(cfg)
    if kind in EDGE_VALUE_KINDS:
        return decode_edge_values(cfg)
    return decode_node_set(cfg)


# ------------------------------------------------------ structure helpers

def _components(nodes: Iterable[int], adj: Mapping[int, Iterable[int]]) -> int:
    seen: Set[int] = set()
    count = 0
    for s in nodes:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return count


def edge_adjacency(g: Graph, edges: Iterable[int]) -> Dict[int, list]:
    adj: Dict[int, list] = {}
    for i in edges:
        e = g.edges[i]
        adj.setdefault(e.u, []).append(e.v)
        adj.setdefault(e.v, []).append(e.u)
    return adj


def is_hamiltonian_cycle(g: Graph, edges: FrozenSet[int]) -> bool:
    if g.n < 3 or len(edges) != g.n:
        return False
    adj = edge_adjacency(g, edges)
    if any(len(adj.get(v, ())) != 2 for v in g.nodes):
        return False
    return _components(g.nodes, adj) == 1


def is_tree_spanning(g: Graph, edges: FrozenSet[int], required: Iterable[int]) -> bool:
    """Edges form a tree (possibly a single node) containing ``required``."""
    required = set(required)
    adj = edge_adjacency(g, edges)
    touched = set(adj)
    if not edges:
        return len(required) <= 1
    if not required <= touched:
        return False
    return len(edges) == len(touched) - 1 and _components(touched, adj) == 1


def flow_net_in(g: Graph, flow: Mapping[int, int], v: int) -> int:
    total = 0
    for e in g.port_edges(v):
        x = flow.get(g.edge_index(e.u, e.v), 0)
        total += x if e.v == v else -x
    return total


# --------------------------------------------------- feasibility/objective

def feasible(kind: Kind, cfg: ConfigurationGraph) -> bool:
    """Feasibility of the decoded output; undecodable outputs raise."""
    g = cfg.graph
    sol = decode(kind, cfg)
    if kind is Kind.EDGE_COVER:
        covered = set()
        for i in sol:
            covered.update((g.edges[i].u, g.edges[i].v))
        return covered == set(g.nodes)
    if kind is Kind.B_MATCHING:
        load = {v: 0 for v in g.nodes}
        for i, x in sol.items():
            load[g.edges[i].u] += x
            load[g.edges[i].v] += x
        return all(load[v] <= g.b(v) for v in g.nodes)
    if kind is Kind.VERTEX_COVER:
        return all(e.u in sol or e.v in sol for e in g.edges)
    if kind is Kind.DOMINATING_SET:
        return all(v in sol or any(u in sol for u in g.neighbors(v)) for v in g.nodes)
    if kind is Kind.TSP:
        return is_hamiltonian_cycle(g, sol)
    if kind is Kind.STEINER:
        return is_tree_spanning(g, sol, g.terminals)
    if kind is Kind.MST:
        return len(sol) == g.n - 1 and is_tree_spanning(g, sol, g.nodes)
    if kind is Kind.MAX_FLOW:
        for i, x in sol.items():
            c = g.edges[i].c or 0
            if x > c:
                return False
        return all(flow_net_in(g, sol, v) == 0 for v in g.nodes
                   if v not in (g.source, g.sink))
    if kind is Kind.MAX_CUT:
        return 0 < len(sol) < g.n
    if kind is Kind.LEADER:
        return len(sol) == 1 and all(g.attrs(v).candidate for v in sol)
    raise ValueError(kind)


def validate_output(kind: Kind | str, cfg: ConfigurationGraph) -> bool:
    return feasible(Kind(kind), cfg)


def objective(kind: Kind, cfg: ConfigurationGraph) -> int:
    g = cfg.graph
    sol = decode(kind, cfg)
    if kind is Kind.EDGE_COVER:
        return len(sol)
    if kind is Kind.B_MATCHING:
        return sum(sol.values())
    if kind in (Kind.VERTEX_COVER, Kind.DOMINATING_SET):
        return sum(g.node_weight(v) for v in sol)
    if kind in (Kind.TSP, Kind.STEINER, Kind.MST):
        return sum(g.edges[i].w or 1 for i in sol)
    if kind is Kind.MAX_FLOW:
        return flow_net_in(g, sol, g.sink)
    if kind is Kind.MAX_CUT:
        return sum(e.w or 1 for e in g.edges if (e.u in sol) != (e.v in sol))
    raise ValueError(kind)
