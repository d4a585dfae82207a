"""Port-numbered graphs, local inputs and configuration graphs.

A :class:`Graph` stores each edge once and exposes it through the port
lists of both endpoints; port ``p`` of a node (1-based) is the ``p``-th
edge declared on that node.  The state a node sees is its
:class:`LocalInput` plus its output bit string.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .bits import from_hex, is_bits, to_hex

INFINITY = float("inf")


class GraphError(ValueError):
    """Invalid graph or assignment; ``line`` is set for parse errors."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    w: Optional[int] = None
    c: Optional[int] = None

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    @property
    def key(self) -> Tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class NodeAttrs:
    w: Optional[int] = None
    b: Optional[int] = None
    terminal: bool = False
    source: bool = False
    sink: bool = False
    candidate: bool = False


@dataclass(frozen=True)
class PortInput:
    """What a node knows about one incident edge."""

    w: Optional[int]
    c: Optional[int]
    outgoing: Optional[bool]


@dataclass(frozen=True)
class LocalInput:
    """Decoded input assignment I(v)."""

    id: int
    id_bits: int
    W: int
    w: Optional[int]
    b: Optional[int]
    terminal: bool
    source: bool
    sink: bool
    candidate: bool
    directed: bool
    ports: Tuple[PortInput, ...]

    @property
    def deg(self) -> int:
        return len(self.ports)

    @property
    def wbits(self) -> int:
        return max(1, self.W.bit_length())


class Graph:
    """Immutable connected port-numbered graph."""

    def __init__(
        self,
        nodes: Mapping[int, NodeAttrs] | Iterable[int],
        edges: Sequence[Edge],
        directed: bool = False,
        W: Optional[int] = None,
        name: str = "g",
    ) -> None:
        if isinstance(nodes, Mapping):
            attrs = dict(nodes)
        else:
            attrs = {v: NodeAttrs() for v in nodes}
        self.name = name
        self.directed = directed
        self._attrs: Dict[int, NodeAttrs] = attrs
        self.nodes: Tuple[int, ...] = tuple(attrs)
        self.edges: Tuple[Edge, ...] = tuple(edges)
        ports: Dict[int, List[int]] = {v: [] for v in self.nodes}
        self._index: Dict[Tuple[int, int], int] = {}
        for i, e in enumerate(self.edges):
            if e.u not in attrs or e.v not in attrs:
                bad = e.u if e.u not in attrs else e.v
                raise GraphError(f"unknown endpoint {bad}")
            if e.u == e.v:
                raise GraphError(f"self-loop at {e.u}")
            if (e.u, e.v) in self._index or (e.v, e.u) in self._index:
                raise GraphError(f"multi-edge between {e.u} and {e.v}")
            self._index[(e.u, e.v)] = i
            self._index[(e.v, e.u)] = i
            ports[e.u].append(i)
            ports[e.v].append(i)
        self._ports = {v: tuple(p) for v, p in ports.items()}
        for v in self.nodes:
            if not isinstance(v, int) or v < 0:
                raise GraphError(f"node id {v!r} is not a non-negative integer")
        if not self.nodes:
            raise GraphError("graph has no nodes")
        if not self._connected():
            raise GraphError("graph is disconnected")
        values = [1]
        for e in self.edges:
            values += [x for x in (e.w, e.c) if x is not None]
        for a in attrs.values():
            values += [x for x in (a.w, a.b) if x is not None]
        self.W = W if W is not None else max(values)
        if self.W < max(values):
            raise GraphError(f"W={self.W} is smaller than a stored value")

    def _connected(self) -> bool:
        start = self.nodes[0]
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(self.nodes)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def id_bits(self) -> int:
        return max(1, max(self.nodes).bit_length())

    def attrs(self, v: int) -> NodeAttrs:
        return self._attrs[v]

    def node_weight(self, v: int) -> int:
        w = self._attrs[v].w
        return 1 if w is None else w

    def b(self, v: int) -> int:
        b = self._attrs[v].b
        return 1 if b is None else b

    def degree(self, v: int) -> int:
        return len(self._ports[v])

    def port_edges(self, v: int) -> Tuple[Edge, ...]:
        return tuple(self.edges[i] for i in self._ports[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(self.edges[i].other(v) for i in self._ports[v])

    def port_of(self, v: int, u: int) -> int:
        """1-based port at ``v`` leading to ``u``."""
        i = self._index[(v, u)]
        return self._ports[v].index(i) + 1

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def edge(self, u: int, v: int) -> Edge:
        return self.edges[self._index[(u, v)]]

    def edge_index(self, u: int, v: int) -> int:
        return self._index[(u, v)]

    def weight(self, u: int, v: int) -> int:
        w = self.edge(u, v).w
        return 1 if w is None else w

    @cached_property
    def source(self) -> Optional[int]:
        found = [v for v in self.nodes if self._attrs[v].source]
        return found[0] if found else None

    @cached_property
    def sink(self) -> Optional[int]:
        found = [v for v in self.nodes if self._attrs[v].sink]
        return found[0] if found else None

    @cached_property
    def terminals(self) -> frozenset:
        return frozenset(v for v in self.nodes if self._attrs[v].terminal)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def local_input(self, v: int) -> LocalInput:
        a = self._attrs[v]
        ports = []
        for e in self.port_edges(v):
            ports.append(PortInput(
                w=e.w,
                c=e.c,
                outgoing=(e.u == v) if self.directed else None,
            ))
        return LocalInput(
            id=v, id_bits=self.id_bits, W=self.W, w=a.w, b=a.b,
            terminal=a.terminal, source=a.source, sink=a.sink,
            candidate=a.candidate, directed=self.directed, ports=tuple(ports),
        )

    def with_attrs(self, updates: Mapping[int, NodeAttrs], name: Optional[str] = None) -> "Graph":
        attrs = dict(self._attrs)
        attrs.update(updates)
        return Graph(attrs, self.edges, self.directed, None, name or self.name)

    def __repr__(self) -> str:
        return f"Graph({self.name!r}, n={self.n}, m={self.m}, directed={self.directed})"


# ---------------------------------------------------------------- predicates

def is_bipartite(g: Graph) -> Tuple[bool, Optional[Dict[int, int]]]:
    color: Dict[int, int] = {}
    for start in g.nodes:
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return False, None
    return True, color


def odd_girth(g: Graph) -> float:
    """Length of the shortest odd cycle, ``inf`` for bipartite graphs.

    For every start node a BFS over (node, parity) states gives the
    shortest odd closed walk through it; the minimum over all starts is
    the odd girth because a shortest odd closed walk is a simple cycle.
    """
    best = INFINITY
    for s in g.nodes:
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            x, p = queue.popleft()
            d = dist[(x, p)]
            if d + 1 >= best:
                continue
            for y in g.neighbors(x):
                state = (y, 1 - p)
                if state not in dist:
                    dist[state] = d + 1
                    queue.append(state)
        if (s, 1) in dist:
            best = min(best, dist[(s, 1)])
    return best


def check_metric(g: Graph) -> bool:
    if not g.is_complete():
        raise GraphError("metric check requires complete graph")
    for a, b, c in permutations(g.nodes, 3):
        if g.weight(a, c) > g.weight(a, b) + g.weight(b, c):
            return False
    return True


# ------------------------------------------------------- configuration graph

Assignment = Dict[int, str]


@dataclass(frozen=True)
class ConfigurationGraph:
    """Graph plus per-node output strings; empty outputs give G_I."""

    graph: Graph
    output: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        out = dict(self.output) if self.output else {v: "" for v in self.graph.nodes}
        missing = [v for v in self.graph.nodes if v not in out]
        if missing:
            raise GraphError(f"missing node {missing[0]} in assignment")
        extra = [v for v in out if v not in self.graph._attrs]
        if extra:
            raise GraphError(f"assignment names unknown node {extra[0]}")
        for v, s in out.items():
            if not is_bits(s):
                raise GraphError(f"output of node {v} is not a bit string")
        object.__setattr__(self, "output", out)

    @cached_property
    def inputs(self) -> Dict[int, LocalInput]:
        return {v: self.graph.local_input(v) for v in self.graph.nodes}

    def state(self, v: int) -> Tuple[LocalInput, str]:
        return self.inputs[v], self.output[v]


def attach_io(
    g: Graph,
    output: Optional[Mapping[int, str]] = None,
    input: Optional[Mapping[int, LocalInput]] = None,
) -> ConfigurationGraph:
    """Bind an output assignment (and optionally a checked input) to ``g``."""
    if input is not None:
        for v in g.nodes:
            if v not in input:
                raise GraphError(f"missing node {v} in assignment")
            if input[v] != g.local_input(v):
                raise GraphError(f"input of node {v} disagrees with the graph")
    return ConfigurationGraph(g, dict(output) if output is not None else {})


# -------------------------------------------------------------- file format

def _parse_int(token: str, key: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"bad integer for {key}: {token!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    name = "g"
    directed = False
    W: Optional[int] = None
    attrs: Dict[int, NodeAttrs] = {}
    edges: List[Edge] = []
    edge_lines: List[int] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "graph":
            if seen_header or attrs or edges:
                raise GraphError("graph header must come first and only once", lineno)
            seen_header = True
            if len(tok) > 1:
                name = tok[1]
            for t in tok[2:]:
                if t == "directed":
                    directed = True
                elif t.startswith("W="):
                    W = _parse_int(t[2:], "W", lineno)
                else:
                    raise GraphError(f"unknown header field {t!r}", lineno)
        elif head == "node":
            if len(tok) < 2:
                raise GraphError("node line needs an id", lineno)
            v = _parse_int(tok[1], "node id", lineno)
            if v < 0:
                raise GraphError(f"negative node id {v}", lineno)
            if v in attrs:
                raise GraphError(f"duplicate node id {v}", lineno)
            kw: Dict[str, object] = {}
            for t in tok[2:]:
                if t in ("terminal", "source", "sink", "candidate"):
                    kw[t] = True
                elif t.startswith("w=") or t.startswith("b="):
                    kw[t[0]] = _parse_int(t[2:], t[0], lineno)
                else:
                    raise GraphError(f"unknown node field {t!r}", lineno)
            attrs[v] = NodeAttrs(**kw)  # type: ignore[arg-type]
        elif head == "edge":
            if len(tok) < 3:
                raise GraphError("edge line needs two endpoints", lineno)
            u = _parse_int(tok[1], "endpoint", lineno)
            v = _parse_int(tok[2], "endpoint", lineno)
            for x in (u, v):
                if x not in attrs:
                    raise GraphError(f"unknown endpoint {x}", lineno)
            ekw: Dict[str, int] = {}
            for t in tok[3:]:
                if t.startswith("w=") or t.startswith("c="):
                    ekw[t[0]] = _parse_int(t[2:], t[0], lineno)
                else:
                    raise GraphError(f"unknown edge field {t!r}", lineno)
            edges.append(Edge(u, v, **ekw))
            edge_lines.append(lineno)
        else:
            raise GraphError(f"malformed line {raw.strip()!r}", lineno)
    try:
        return Graph(attrs, edges, directed, W, name)
    except GraphError as exc:
        msg = str(exc)
        if "multi-edge" in msg or "self-loop" in msg:
            for e, ln in zip(edges, edge_lines):
                if (e.u == e.v and "self-loop" in msg) or (
                    "multi-edge" in msg and f"between {e.u} and {e.v}" in msg
                ):
                    raise GraphError(msg, ln) from None
        last = max(edge_lines + [0]) or None
        raise GraphError(msg, last) from None


def serialize_graph(g: Graph) -> str:
    head = ["graph", g.name]
    if g.directed:
        head.append("directed")
    head.append(f"W={g.W}")
    lines = [" ".join(head)]
    for v in g.nodes:
        a = g.attrs(v)
        parts = ["node", str(v)]
        if a.w is not None:
            parts.append(f"w={a.w}")
        for flag in ("terminal", "source", "sink", "candidate"):
            if getattr(a, flag):
                parts.append(flag)
        if a.b is not None:
            parts.append(f"b={a.b}")
        lines.append(" ".join(parts))
    for e in g.edges:
        parts = ["edge", str(e.u), str(e.v)]
        if e.w is not None:
            parts.append(f"w={e.w}")
        if e.c is not None:
            parts.append(f"c={e.c}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> Assignment:
    out: Assignment = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] != "out" or len(tok) not in (2, 3):
            raise GraphError(f"malformed line {raw.strip()!r}", lineno)
        v = _parse_int(tok[1], "node id", lineno)
        if v in out:
            raise GraphError(f"duplicate node id {v}", lineno)
        try:
            out[v] = from_hex(tok[2]) if len(tok) == 3 else ""
        except ValueError as exc:
            raise GraphError(str(exc), lineno) from None
    return out


def serialize_assignment(a: Mapping[int, str]) -> str:
    return "".join(f"out {v} {to_hex(a[v])}\n" for v in sorted(a))
