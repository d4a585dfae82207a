"""Candidate (scheme, configuration) pairs for every registered scheme.

Each generator yields an endless stream of candidates; the caller
classifies them with the oracles and keeps what it needs.  Outputs are
drawn around the oracle optimum (the optimum itself, small perturbations,
random feasible and infeasible outputs) so that yes, gap and no
configurations all show up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import ceil
from typing import Callable, Dict, Iterator, List, Optional

from . import generators as gen
from .flow_cut import max_flow
from .graph import ConfigurationGraph, Graph, NodeAttrs
from .gpls import Scheme
from .oracles import opt_value, scheme_alpha
from .problems import (Kind, decode_edge_set, decode_edge_values, decode_node_set, edge_set_output,
                       edge_value_output, node_set_output)
from .registry import build_scheme


@dataclass(frozen=True)
class Candidate:
    scheme: Scheme
    cfg: ConfigurationGraph
    tag: str


Stream = Iterator[Candidate]


# --------------------------------------------------------- output variants

def edge_set_variants(g: Graph, base: Dict[int, str], rng: random.Random, count: int = 4) -> List[Dict[int, str]]:
    C = set(decode_edge_set(ConfigurationGraph(g, base)))
    keys = [e.key for e in g.edges]
    out = [base, edge_set_output(g, keys)]
    for _ in range(count):
        D = set(C)
        for i in rng.sample(range(g.m), rng.randint(1, min(3, g.m))):
            D ^= {i}
        out.append(edge_set_output(g, [g.edges[i].key for i in D]))
    out.append(edge_set_output(g, [k for k in keys if rng.random() < 0.5]))
    return out


def node_set_variants(g: Graph, base: Dict[int, str], rng: random.Random, count: int = 4) -> List[Dict[int, str]]:
    S = set(decode_node_set(ConfigurationGraph(g, base)))
    out = [base, node_set_output(g, g.nodes)]
    for _ in range(count):
        T = set(S) ^ set(rng.sample(list(g.nodes), rng.randint(1, min(2, g.n))))
        out.append(node_set_output(g, T))
    out.append(node_set_output(g, [v for v in g.nodes if rng.random() < 0.5]))
    out.append(node_set_output(g, [rng.choice(g.nodes)]))
    return out


def value_variants(g: Graph, base: Dict[int, str], rng: random.Random, upper: Callable[[int], int],
                   count: int = 4) -> List[Dict[int, str]]:
    mu = decode_edge_values(ConfigurationGraph(g, base))
    out = [base, edge_value_output(g, {})]
    for _ in range(count):
        nu = dict(mu)
        i = rng.randrange(g.m)
        nu[i] = max(0, min(upper(i), nu.get(i, 0) + rng.choice((-1, -1, 1))))
        out.append(edge_value_output(g, nu))
    out.append(edge_value_output(g, {i: rng.randint(0, upper(i)) for i in range(g.m)}))
    return out


def thresholds(opt: int, alpha, sense: str) -> List[int]:
    if sense == "min":
        top = int(ceil(float(alpha) * opt)) + 3
        return list(range(0, top + 1))
    return list(range(0, opt + 3))


# ----------------------------------------------------------------- graphs

def _odd_girth_graph(rng: random.Random, kappa: int, lo: int = 3, hi: int = 10, **kw) -> Graph:
    while True:
        n = rng.randint(lo, hi)
        try:
            return gen.odd_girth_graph(n, kappa, rng, p=rng.choice((0.2, 0.35, 0.5)), tries=40, **kw)
        except gen.GenerationError:
            continue


def _bipartite(rng: random.Random, lo: int = 2, hi: int = 10, **kw) -> Graph:
    return gen.bipartite_graph(rng.randint(lo, hi), rng.choice((0.2, 0.4, 0.6)), rng, **kw)


def _random(rng: random.Random, lo: int = 2, hi: int = 10, **kw) -> Graph:
    return gen.random_graph(rng.randint(lo, hi), rng.choice((0.2, 0.4, 0.7)), rng, **kw)


def _metric(rng: random.Random, lo: int, hi: int, terminals: bool = False) -> Graph:
    n = rng.randint(lo, hi)
    t = rng.randint(2, min(n, 5)) if terminals else 0
    return gen.metric_graph(n, rng, span=rng.choice((3, 5)), terminals=t)


def _odd_ring(rng: random.Random) -> Graph:
    return gen.ring(rng.choice((3, 5, 7, 9)))


# ------------------------------------------------------------- per scheme

def _output_stream(rng: random.Random, make_graph: Callable[[random.Random], Graph], kind: Kind,
                   build: Callable[[Graph], Scheme],
                   variants: Callable[[Graph, Dict[int, str], random.Random], List[Dict[int, str]]]) -> Stream:
    while True:
        g = make_graph(rng)
        _, wit = opt_value(kind, g)
        s = build(g)
        for i, out in enumerate(variants(g, wit, rng)):
            yield Candidate(s, ConfigurationGraph(g, out), f"{g.name}:{i}")


def _threshold_stream(rng: random.Random, make_graph: Callable[[random.Random], Graph], kind: Kind,
                      build: Callable[[int], Scheme], sense: str, per_graph: int = 4) -> Stream:
    while True:
        g = make_graph(rng)
        opt, _ = opt_value(kind, g)
        probe = build(0)
        ks = thresholds(opt, scheme_alpha(probe, g.n), sense)
        for k in rng.sample(ks, min(per_graph, len(ks))):
            yield Candidate(build(k), ConfigurationGraph(g), f"{g.name}:k={k}")


def _flow_variants(g: Graph, rng: random.Random) -> List[Dict[int, str]]:
    best = max_flow(g).f
    cap = {i: e.c or 0 for i, e in enumerate(g.edges)}
    base = edge_value_output(g, best)
    out = [base, edge_value_output(g, {})]
    # cancel one unit along a path of the flow support from s to t
    for _ in range(2):
        f = dict(best)
        path = _support_path(g, f)
        if path:
            for i in path:
                f[i] -= 1
            out.append(edge_value_output(g, f))
    out.extend(value_variants(g, base, rng, lambda i: cap[i], count=2)[2:])
    return out


def _support_path(g: Graph, f: Dict[int, int]) -> Optional[List[int]]:
    s, t = g.source, g.sink
    prev: Dict[int, Optional[int]] = {s: None}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            break
        for e in g.port_edges(x):
            i = g.edge_index(e.u, e.v)
            if e.u == x and f.get(i, 0) > 0 and e.v not in prev:
                prev[e.v] = i
                stack.append(e.v)
    if t not in prev:
        return None
    path, y = [], t
    while prev[y] is not None:
        i = prev[y]
        path.append(i)
        y = g.edges[i].u
    return path


def _flow_graph(rng: random.Random) -> Graph:
    return gen.flow_network(rng.randint(2, 8), rng.choice((0.3, 0.5)), rng, W=rng.choice((3, 5, 10)))


def _with_b(g: Graph, rng: random.Random, b_max: int) -> Graph:
    attrs = {v: NodeAttrs(b=rng.randint(1, b_max)) for v in g.nodes}
    return Graph(attrs, g.edges, W=max([g.W, b_max]), name=g.name)


def stream(name: str, seed: int, kappa: Optional[int] = None) -> Stream:
    """Candidates for scheme ``name`` (``kappa`` fixes the odd-girth parameter)."""
    rng = random.Random(f"{name}/{seed}/{kappa}")

    def kap() -> int:
        return kappa if kappa is not None else rng.choice((1, 2, 3))

    if name == "edge-cover-apls":
        while True:
            ka = kap()
            g = _odd_girth_graph(rng, ka)
            yield from _limited(_output_stream(rng, lambda r, g=g: g, Kind.EDGE_COVER,
                                               lambda _g, ka=ka: build_scheme(name, kappa=ka),
                                               edge_set_variants), 7)
    if name == "edge-cover-bipartite-pls":
        yield from _output_stream(rng, _bipartite, Kind.EDGE_COVER, lambda g: build_scheme(name),
                                  edge_set_variants)
    if name == "edge-cover-ring-pls":
        yield from _output_stream(rng, _odd_ring, Kind.EDGE_COVER, lambda g: build_scheme(name),
                                  lambda g, w, r: edge_set_variants(g, _rotate_cover(g, w, r), r))
    if name == "edge-cover-ring-dpls":
        yield from _threshold_stream(rng, _odd_ring, Kind.EDGE_COVER,
                                     lambda k: build_scheme(name, k=k), "min")
    if name == "edge-cover-adpls":
        while True:
            ka = kap()
            yield from _limited(_threshold_stream(rng, lambda r, ka=ka: _odd_girth_graph(r, ka),
                                                  Kind.EDGE_COVER,
                                                  lambda k, ka=ka: build_scheme(name, kappa=ka, k=k),
                                                  "min"), 4)
    if name == "edge-cover-bipartite-dpls":
        yield from _threshold_stream(rng, _bipartite, Kind.EDGE_COVER,
                                     lambda k: build_scheme(name, k=k), "min")
    if name == "bmatching-apls":
        while True:
            ka = kap()
            g = _with_b(_odd_girth_graph(rng, ka, hi=8), rng, 2)
            yield from _limited(_output_stream(
                rng, lambda r, g=g: g, Kind.B_MATCHING, lambda _g, ka=ka: build_scheme(name, kappa=ka),
                lambda g, w, r: value_variants(g, w, r, lambda i: _bcap(g, i))), 7)
    if name == "bmatching-bipartite-pls":
        yield from _output_stream(
            rng, lambda r: _with_b(_bipartite(r, hi=8), r, 2), Kind.B_MATCHING,
            lambda g: build_scheme(name), lambda g, w, r: value_variants(g, w, r, lambda i: _bcap(g, i)))
    if name == "bmatching-adpls":
        while True:
            ka = kap()
            yield from _limited(_threshold_stream(
                rng, lambda r, ka=ka: _with_b(_odd_girth_graph(r, ka, hi=8), r, 2), Kind.B_MATCHING,
                lambda k, ka=ka: build_scheme(name, kappa=ka, k=k), "max"), 4)
    if name == "bmatching-bipartite-dpls":
        yield from _threshold_stream(rng, lambda r: _with_b(_bipartite(r, hi=8), r, 2), Kind.B_MATCHING,
                                     lambda k: build_scheme(name, k=k), "max")
    if name in ("vc-adpls", "ds-adpls"):
        kind = Kind.VERTEX_COVER if name == "vc-adpls" else Kind.DOMINATING_SET
        yield from _threshold_stream(rng, lambda r: _random(r, node_w=10), kind,
                                     lambda k: build_scheme(name, k=k), "min")
    if name in ("vc-apls", "ds-apls"):
        kind = Kind.VERTEX_COVER if name == "vc-apls" else Kind.DOMINATING_SET
        yield from _output_stream(rng, lambda r: _random(r, node_w=10), kind,
                                  lambda g: build_scheme(name), node_set_variants)
    if name == "tsp-adpls":
        yield from _threshold_stream(rng, lambda r: _metric(r, 3, 7), Kind.TSP,
                                     lambda k: build_scheme(name, k=k), "min")
    if name == "tsp-apls":
        yield from _output_stream(rng, lambda r: _metric(r, 3, 7), Kind.TSP, lambda g: build_scheme(name),
                                  _tour_variants)
    if name == "steiner-adpls":
        yield from _threshold_stream(rng, lambda r: _metric(r, 2, 7, terminals=True), Kind.STEINER,
                                     lambda k: build_scheme(name, k=k), "min")
    if name == "steiner-apls":
        yield from _output_stream(rng, lambda r: _metric(r, 2, 7, terminals=True), Kind.STEINER,
                                  lambda g: build_scheme(name), edge_set_variants)
    if name == "flow-pls":
        s = build_scheme(name)
        while True:
            g = _flow_graph(rng)
            for i, out in enumerate(_flow_variants(g, rng)):
                yield Candidate(s, ConfigurationGraph(g, out), f"{g.name}:{i}")
    if name == "flow-dpls":
        yield from _threshold_stream(rng, _flow_graph, Kind.MAX_FLOW, lambda k: build_scheme(name, k=k), "max")
    if name == "maxcut-apls":
        yield from _output_stream(rng, lambda r: _random(r, W=10), Kind.MAX_CUT, lambda g: build_scheme(name),
                                  node_set_variants)
    if name == "maxcut-adpls":
        yield from _threshold_stream(rng, lambda r: _random(r, W=10), Kind.MAX_CUT,
                                     lambda k: build_scheme(name, k=k), "max")
    raise KeyError(f"no instance stream for {name}")


def _limited(it: Iterator[Candidate], count: int) -> Iterator[Candidate]:
    for i, c in enumerate(it):
        if i >= count:
            return
        yield c


def _bcap(g: Graph, i: int) -> int:
    e = g.edges[i]
    return min(g.b(e.u), g.b(e.v))


def _rotate_cover(g: Graph, wit: Dict[int, str], rng: random.Random) -> Dict[int, str]:
    """A random minimum cover of an odd ring (the loose node moves around)."""
    n = g.n
    shift = rng.randrange(n)
    pairs = [((2 * i + shift) % n, (2 * i + 1 + shift) % n) for i in range(n // 2)]
    pairs.append(((n - 1 + shift) % n, (n - 2 + shift) % n))
    return edge_set_output(g, pairs)


def _tour_variants(g: Graph, wit: Dict[int, str], rng: random.Random) -> List[Dict[int, str]]:
    out = [wit]
    nodes = list(g.nodes)
    for _ in range(4):
        rng.shuffle(nodes)
        out.append(edge_set_output(g, list(zip(nodes, nodes[1:] + nodes[:1]))))
    out.extend(edge_set_variants(g, wit, rng, count=2)[1:])
    return out
