"""Deterministic random instance families."""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import Edge, Graph, NodeAttrs, check_metric, odd_girth


class GenerationError(ValueError):
    """Parameters admit no instance (or none was found within the attempt budget)."""


def _rng(seed_or_rng) -> random.Random:
    return seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)


def _attrs(n: int, rng: random.Random, node_w: Optional[int], b_max: Optional[int]) -> Dict[int, NodeAttrs]:
    return {v: NodeAttrs(w=rng.randint(1, node_w) if node_w else None,
                         b=rng.randint(1, b_max) if b_max else None)
            for v in range(n)}


def _weights(pairs: Sequence[Tuple[int, int]], rng: random.Random, W: Optional[int]) -> List[Edge]:
    return [Edge(u, v, w=rng.randint(1, W) if W else None) for u, v in pairs]


def _W(edges: Sequence[Edge], attrs: Dict[int, NodeAttrs]) -> int:
    vals = [e.w or 1 for e in edges] + [e.c or 0 for e in edges]
    vals += [a.w or 1 for a in attrs.values()] + [a.b or 1 for a in attrs.values()]
    return max(vals + [1])


def ring(n: int, name: Optional[str] = None) -> Graph:
    if n < 3:
        raise GenerationError("a ring needs at least 3 nodes")
    edges = [Edge(i, (i + 1) % n) for i in range(n)]
    return Graph(range(n), edges, name=name or f"ring{n}")


def random_pairs(n: int, p: float, rng: random.Random) -> List[Tuple[int, int]]:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        pairs.add((min(u, v), max(u, v)))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in pairs and rng.random() < p:
            pairs.add((u, v))
    return sorted(pairs)


def random_graph(n: int, p: float, seed=0, W: Optional[int] = None, node_w: Optional[int] = None,
                 b_max: Optional[int] = None, name: Optional[str] = None) -> Graph:
    rng = _rng(seed)
    if n < 1:
        raise GenerationError("n must be positive")
    pairs = random_pairs(n, p, rng) if n > 1 else []
    edges = _weights(pairs, rng, W)
    attrs = _attrs(n, rng, node_w, b_max)
    return Graph(attrs, edges, W=_W(edges, attrs), name=name or f"random{n}")


def odd_girth_graph(n: int, kappa: int, seed=0, p: float = 0.3, tries: int = 200, **kw) -> Graph:
    """Random connected graph whose odd-girth is at least ``2*kappa + 1``."""
    rng = _rng(seed)
    for _ in range(tries):
        g = random_graph(n, p, rng, **kw)
        if odd_girth(g) >= 2 * kappa + 1:
            return g
        p *= 0.9
    raise GenerationError(f"no graph with odd-girth >= {2 * kappa + 1} found")


def bipartite_graph(n: int, p: float = 0.5, seed=0, W: Optional[int] = None,
                    node_w: Optional[int] = None, b_max: Optional[int] = None,
                    name: Optional[str] = None) -> Graph:
    rng = _rng(seed)
    if n < 2:
        raise GenerationError("bipartite family needs n >= 2")
    side = {v: v % 2 for v in range(n)}
    left = [v for v in range(n) if side[v] == 0]
    right = [v for v in range(n) if side[v] == 1]
    pairs = set()
    # spanning tree across the bipartition
    joined = [left[0]]
    rest = [v for v in range(n) if v != left[0]]
    rng.shuffle(rest)
    pending = list(rest)
    while pending:
        for v in list(pending):
            opts = [u for u in joined if side[u] != side[v]]
            if opts:
                u = rng.choice(opts)
                pairs.add((min(u, v), max(u, v)))
                joined.append(v)
                pending.remove(v)
    for u in left:
        for v in right:
            if rng.random() < p:
                pairs.add((min(u, v), max(u, v)))
    edges = _weights(sorted(pairs), rng, W)
    attrs = _attrs(n, rng, node_w, b_max)
    return Graph(attrs, edges, W=_W(edges, attrs), name=name or f"bipartite{n}")


def metric_graph(n: int, seed=0, span: int = 5, dim: int = 2, terminals: int = 0,
                 name: Optional[str] = None) -> Graph:
    """Complete graph on random integer points with L1 distances (min 1)."""
    rng = _rng(seed)
    if n < 2:
        raise GenerationError("metric family needs n >= 2")
    if terminals > n:
        raise GenerationError("more terminals than nodes")
    pts: List[Tuple[int, ...]] = []
    while len(pts) < n:
        p = tuple(rng.randint(0, span) for _ in range(dim))
        if p not in pts:
            pts.append(p)
    edges = [Edge(u, v, w=sum(abs(a - b) for a, b in zip(pts[u], pts[v])))
             for u, v in itertools.combinations(range(n), 2)]
    term = set(rng.sample(range(n), terminals))
    attrs = {v: NodeAttrs(terminal=v in term) for v in range(n)}
    g = Graph(attrs, edges, W=_W(edges, attrs), name=name or f"metric{n}")
    assert check_metric(g)
    return g


def flow_network(n: int, p: float = 0.4, seed=0, W: int = 5, name: Optional[str] = None) -> Graph:
    """Random orientation of a connected graph with source 0 and sink ``n-1``."""
    rng = _rng(seed)
    if n < 2:
        raise GenerationError("flow family needs n >= 2")
    pairs = random_pairs(n, p, rng)
    edges = []
    for u, v in pairs:
        if u == 0 or v == n - 1:
            a, b = u, v
        elif v == 0 or u == n - 1:
            a, b = v, u
        else:
            a, b = (u, v) if rng.random() < 0.7 else (v, u)
        edges.append(Edge(a, b, c=rng.randint(0, W)))
    attrs = {v: NodeAttrs(source=v == 0, sink=v == n - 1) for v in range(n)}
    return Graph(attrs, edges, directed=True, W=max(W, 1), name=name or f"flow{n}")


FAMILIES = ("ring", "odd-girth", "bipartite", "metric", "flow", "random")


def generate(family: str, n: int, seed: int = 0, p: float = 0.4, kappa: int = 1,
             W: Optional[int] = None, terminals: int = 0) -> Graph:
    if family == "ring":
        return ring(n)
    if family == "odd-girth":
        return odd_girth_graph(n, kappa, seed, p=p, W=W)
    if family == "bipartite":
        return bipartite_graph(n, p, seed, W=W)
    if family == "metric":
        return metric_graph(n, seed, terminals=terminals)
    if family == "flow":
        return flow_network(n, p, seed, W=W or 5)
    if family == "random":
        return random_graph(n, p, seed, W=W)
    raise GenerationError(f"unknown family {family!r}")

