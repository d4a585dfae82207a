"""Edge cover and b-matching schemes.

The odd-girth APLSs derive their duals from shortest interchanging
(edge cover) or alternating (b-matching) simple paths.  Bipartite
instances use integral duals obtained from a minimum cut.  Threshold
versions come from the dual-to-comparison reduction.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import ceil
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .bits import BitReader, gamma
from .certify import comparison_check, comparison_labels, is_ring, le_check, le_colors
from .graph import INFINITY, ConfigurationGraph, Graph, LocalInput, is_bipartite, odd_girth
from .gpls import LabelAssignment, LocalView, ProverRefusal, Scheme
from .lp import (DualCodec, LocalSlice, LPFamily, StandardFormLP, Vector, check_local_slice,
                 make_primal_dual_apls, reduce_apls_to_adpls)
from .maxflow import bipartite_vertex_cover
from .problems import (Kind, OutputError, decode_edge_set, decode_edge_values,
                       edge_set_output, edge_value_output, local_port_bits, local_port_values)

Dist = Dict[int, float]


# ------------------------------------------------------------ path search

def constrained_path_distances(
    g: Graph,
    starts: Sequence[int],
    allowed: Callable[[int, int], bool],
) -> Dist:
    """Shortest simple paths from ``starts`` whose ``i``-th edge satisfies
    ``allowed(edge_index, i)``; the constraint may depend on the parity of
    ``i`` only.

    Exhaustive DFS over simple paths.  A BFS over (node, parity) states
    gives walk distances, which lower-bound simple-path distances and let
    the search drop branches that cannot improve any node.
    """
    states = [(v, p) for v in g.nodes for p in (0, 1)]
    lb: Dict[Tuple[int, int], Dict[int, int]] = {}
    for st in states:
        dist = {st: 0}
        queue = deque([st])
        while queue:
            x, p = queue.popleft()
            for u in g.neighbors(x):
                if allowed(g.edge_index(x, u), p + 1):
                    nxt = (u, 1 - p)
                    if nxt not in dist:
                        dist[nxt] = dist[(x, p)] + 1
                        queue.append(nxt)
        best_to: Dict[int, int] = {}
        for (y, _), d in dist.items():
            best_to[y] = min(best_to.get(y, d), d)
        lb[st] = best_to

    best: Dist = {v: INFINITY for v in g.nodes}
    for s in starts:
        best[s] = 0

    def hopeless(x: int, length: int) -> bool:
        for y, d in lb[(x, length % 2)].items():
            if length + d < best[y]:
                return False
        return True

    def dfs(x: int, length: int, visited: set) -> None:
        if length < best[x]:
            best[x] = length
        if hopeless(x, length):
            return
        for u in g.neighbors(x):
            if u in visited or not allowed(g.edge_index(x, u), length + 1):
                continue
            visited.add(u)
            dfs(u, length + 1, visited)
            visited.remove(u)

    for s in starts:
        dfs(s, 0, {s})
    return best


def cover_degrees(g: Graph, C: FrozenSet[int]) -> Dict[int, int]:
    deg = {v: 0 for v in g.nodes}
    for i in C:
        deg[g.edges[i].u] += 1
        deg[g.edges[i].v] += 1
    return deg


def loose_nodes(g: Graph, C: FrozenSet[int]) -> List[int]:
    deg = cover_degrees(g, C)
    return [v for v in g.nodes if deg[v] != 1]


def int_distances(g: Graph, C: FrozenSet[int]) -> Dist:
    """``int(v)``: shortest interchanging path from a loose node to ``v``."""
    deg = cover_degrees(g, C)
    if any(d == 0 for d in deg.values()):
        raise ValueError("edge set is not a cover")
    return constrained_path_distances(
        g, loose_nodes(g, C), lambda i, step: (i in C) == (step % 2 == 1))


def matching_load(g: Graph, mu: Mapping[int, int]) -> Dict[int, int]:
    load = {v: 0 for v in g.nodes}
    for i, x in mu.items():
        load[g.edges[i].u] += x
        load[g.edges[i].v] += x
    return load


def available_nodes(g: Graph, mu: Mapping[int, int]) -> List[int]:
    load = matching_load(g, mu)
    return [v for v in g.nodes if load[v] < g.b(v)]


def alt_distances(g: Graph, mu: Mapping[int, int]) -> Dist:
    """``alt(v)``: shortest alternating path from an available node to ``v``."""
    load = matching_load(g, mu)
    if any(x < 0 for x in mu.values()) or any(load[v] > g.b(v) for v in g.nodes):
        raise ValueError("not a b-matching")
    return constrained_path_distances(
        g, available_nodes(g, mu), lambda i, step: step % 2 == 1 or mu.get(i, 0) > 0)


# -------------------------------------------------------------- LP families

def _ports_slice(sense: str, inp: LocalInput, y_self: Vector, y_nbr: Sequence[Vector],
                 x: Optional[Sequence[int]], rhs: Fraction) -> LocalSlice:
    d = inp.deg
    rows = {"self": ({j: Fraction(1) for j in range(d)}, rhs)}
    cols = {j: (Fraction(1), {"self": Fraction(1), ("n", j): Fraction(1)}) for j in range(d)}
    y = {"self": y_self[0]}
    for j in range(d):
        y[("n", j)] = y_nbr[j][0]
    xs = None if x is None else {j: Fraction(x[j]) for j in range(d)}
    return LocalSlice(sense, rows, cols, y, xs)


def _incidence_lp(g: Graph, sense: str, rhs: Callable[[int], int]) -> StandardFormLP:
    A = {}
    for j, e in enumerate(g.edges):
        A[(g.nodes.index(e.u), j)] = Fraction(1)
        A[(g.nodes.index(e.v), j)] = Fraction(1)
    return StandardFormLP(
        sense=sense, A=A,
        b=tuple(Fraction(rhs(v)) for v in g.nodes),
        c=tuple(Fraction(1) for _ in g.edges),
        row_map=tuple(g.nodes),
        col_map=tuple(e.key for e in g.edges),
    )


def min_edge_cover(g: Graph) -> FrozenSet[int]:
    """Maximum matching extended greedily (optimal by Gallai's identity)."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.nodes)
    nxg.add_edges_from(e.key for e in g.edges)
    matching = nx.max_weight_matching(nxg, maxcardinality=True)
    C = {g.edge_index(u, v) for u, v in matching}
    covered = {x for u, v in matching for x in (u, v)}
    for v in g.nodes:
        if v not in covered:
            u = min(g.neighbors(v))
            C.add(g.edge_index(v, u))
            covered.add(v)
    return frozenset(C)


def max_b_matching(g: Graph) -> Dict[int, int]:
    """Maximum b-matching through the copy blow-up and a cardinality matching."""
    nxg = nx.Graph()
    for v in g.nodes:
        nxg.add_nodes_from((v, i) for i in range(g.b(v)))
    for e in g.edges:
        for i in range(g.b(e.u)):
            for j in range(g.b(e.v)):
                nxg.add_edge((e.u, i), (e.v, j))
    mu: Dict[int, int] = {}
    for (u, _), (v, _) in nx.max_weight_matching(nxg, maxcardinality=True):
        k = g.edge_index(u, v)
        mu[k] = mu.get(k, 0) + 1
    return mu


def edge_cover_family() -> LPFamily:
    def primal(cfg: ConfigurationGraph) -> List[Fraction]:
        C = decode_edge_set(cfg)
        return [Fraction(1 if j in C else 0) for j in range(cfg.graph.m)]

    def local(inp: LocalInput, out: Optional[str], y_self: Vector, y_nbr: Sequence[Vector]) -> LocalSlice:
        x = None if out is None else [int(b) for b in local_port_bits(inp, out)]
        return _ports_slice("min", inp, y_self, y_nbr, x, Fraction(1))

    return LPFamily(
        sense="min",
        build=lambda g: _incidence_lp(g, "min", lambda v: 1),
        primal=primal,
        local=local,
        rhs=lambda inp: (Fraction(1),),
        optimum=lambda g: edge_set_output(g, [g.edges[i].key for i in min_edge_cover(g)]),
    )


def b_matching_family() -> LPFamily:
    def primal(cfg: ConfigurationGraph) -> List[Fraction]:
        mu = decode_edge_values(cfg)
        return [Fraction(mu.get(j, 0)) for j in range(cfg.graph.m)]

    def local(inp: LocalInput, out: Optional[str], y_self: Vector, y_nbr: Sequence[Vector]) -> LocalSlice:
        x = None if out is None else list(local_port_values(inp, out))
        return _ports_slice("max", inp, y_self, y_nbr, x, Fraction(inp.b or 1))

    return LPFamily(
        sense="max",
        build=lambda g: _incidence_lp(g, "max", g.b),
        primal=primal,
        local=local,
        rhs=lambda inp: (Fraction(inp.b or 1),),
        optimum=lambda g: edge_value_output(g, max_b_matching(g)),
    )


# ------------------------------------------------------------ dual rules

def edge_cover_dual(g: Graph, C: FrozenSet[int], kappa: int) -> Dict[int, Vector]:
    dist = int_distances(g, C)
    D = kappa + 1
    y = {}
    for v in g.nodes:
        d = dist[v]
        if d < kappa and d % 2 == 0:
            y[v] = Fraction(int(d), 2 * D)
        elif d < kappa:
            y[v] = 1 - Fraction(int(d) + 1, 2 * D)
        else:
            y[v] = Fraction(ceil(kappa / 2), D)
    return {v: (y[v],) for v in g.nodes}


def b_matching_dual(g: Graph, mu: Mapping[int, int], kappa: int) -> Dict[int, Vector]:
    dist = alt_distances(g, mu)
    y = {}
    for v in g.nodes:
        d = dist[v]
        if d < kappa and d % 2 == 0:
            y[v] = Fraction(int(d), 2 * kappa)
        elif d < kappa:
            y[v] = 1 - Fraction(int(d) - 1, 2 * kappa)
        else:
            y[v] = Fraction(ceil(kappa / 2), kappa)
    return {v: (y[v],) for v in g.nodes}


def bipartite_sides(g: Graph) -> Tuple[List[int], List[int]]:
    ok, color = is_bipartite(g)
    if not ok:
        raise ValueError("graph is not bipartite")
    assert color is not None
    return [v for v in g.nodes if color[v] == 0], [v for v in g.nodes if color[v] == 1]


def bipartite_cover_dual(g: Graph, weight: Callable[[int], int]) -> FrozenSet[int]:
    left, right = bipartite_sides(g)
    side = set(left)
    arcs = [(e.u, e.v) if e.u in side else (e.v, e.u) for e in g.edges]
    return frozenset(bipartite_vertex_cover(left, right, arcs, {v: weight(v) for v in g.nodes}))


def codec_for(kappa: int, denominator: int) -> DualCodec:
    return DualCodec(width=max(1, kappa.bit_length()), denominator=denominator, max_numerator=kappa)


BIT_CODEC = DualCodec(width=1, denominator=1, max_numerator=1)


# --------------------------------------------------------------- universes

def _odd_girth_at_least(g: Graph, bound: int) -> bool:
    return not g.directed and odd_girth(g) >= bound


def _edge_bits_ok(cfg: ConfigurationGraph) -> bool:
    try:
        decode_edge_set(cfg)
        return True
    except OutputError:
        return False


def _edge_values_ok(cfg: ConfigurationGraph) -> bool:
    try:
        decode_edge_values(cfg)
        return True
    except OutputError:
        return False


def _no_output(cfg: ConfigurationGraph) -> bool:
    return all(cfg.output[v] == "" for v in cfg.graph.nodes)


def _bipartite(g: Graph) -> bool:
    return not g.directed and is_bipartite(g)[0]


# ------------------------------------------------------------------ schemes

def make_edge_cover_apls(kappa: int) -> Scheme:
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    fam = edge_cover_family()
    return make_primal_dual_apls(
        name="edge-cover-apls",
        problem=Kind.EDGE_COVER.value,
        family=fam,
        dual_generator=lambda cfg: edge_cover_dual(cfg.graph, decode_edge_set(cfg), kappa),
        codec=codec_for(kappa, kappa + 1),
        beta=Fraction(kappa + 1, kappa),
        gamma=Fraction(1),
        universe=lambda cfg: cfg.graph.n >= 2 and _odd_girth_at_least(cfg.graph, 2 * kappa + 1)
        and _edge_bits_ok(cfg),
        params={"kappa": kappa},
    )


def make_edge_cover_bipartite_pls() -> Scheme:
    def dual(cfg: ConfigurationGraph) -> Dict[int, Vector]:
        cover = bipartite_cover_dual(cfg.graph, lambda v: 1)
        return {v: (Fraction(0 if v in cover else 1),) for v in cfg.graph.nodes}

    return make_primal_dual_apls(
        name="edge-cover-bipartite-pls",
        problem=Kind.EDGE_COVER.value,
        family=edge_cover_family(),
        dual_generator=dual,
        codec=BIT_CODEC,
        beta=Fraction(1), gamma=Fraction(1),
        universe=lambda cfg: cfg.graph.n >= 2 and _bipartite(cfg.graph) and _edge_bits_ok(cfg),
        kind="PLS",
    )


def make_bmatching_apls(kappa: int) -> Scheme:
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    return make_primal_dual_apls(
        name="bmatching-apls",
        problem=Kind.B_MATCHING.value,
        family=b_matching_family(),
        dual_generator=lambda cfg: b_matching_dual(cfg.graph, decode_edge_values(cfg), kappa),
        codec=codec_for(kappa, kappa),
        beta=Fraction(kappa + 1, kappa),
        gamma=Fraction(1),
        universe=lambda cfg: _odd_girth_at_least(cfg.graph, 2 * kappa + 1) and _edge_values_ok(cfg),
        params={"kappa": kappa},
    )


def make_bmatching_bipartite_pls() -> Scheme:
    def dual(cfg: ConfigurationGraph) -> Dict[int, Vector]:
        cover = bipartite_cover_dual(cfg.graph, cfg.graph.b)
        return {v: (Fraction(1 if v in cover else 0),) for v in cfg.graph.nodes}

    return make_primal_dual_apls(
        name="bmatching-bipartite-pls",
        problem=Kind.B_MATCHING.value,
        family=b_matching_family(),
        dual_generator=dual,
        codec=BIT_CODEC,
        beta=Fraction(1), gamma=Fraction(1),
        universe=lambda cfg: _bipartite(cfg.graph) and _edge_values_ok(cfg),
        kind="PLS",
    )


def make_edge_cover_adpls(kappa: int, k: int) -> Scheme:
    return reduce_apls_to_adpls(
        make_edge_cover_apls(kappa), k, name="edge-cover-adpls",
        universe=lambda cfg: cfg.graph.n >= 2 and _odd_girth_at_least(cfg.graph, 2 * kappa + 1)
        and _no_output(cfg))


def make_edge_cover_bipartite_dpls(k: int) -> Scheme:
    return reduce_apls_to_adpls(
        make_edge_cover_bipartite_pls(), k, name="edge-cover-bipartite-dpls", kind="DPLS",
        universe=lambda cfg: cfg.graph.n >= 2 and _bipartite(cfg.graph) and _no_output(cfg))


def make_bmatching_adpls(kappa: int, k: int) -> Scheme:
    return reduce_apls_to_adpls(
        make_bmatching_apls(kappa), k, name="bmatching-adpls",
        universe=lambda cfg: _odd_girth_at_least(cfg.graph, 2 * kappa + 1) and _no_output(cfg))


def make_bmatching_bipartite_dpls(k: int) -> Scheme:
    return reduce_apls_to_adpls(
        make_bmatching_bipartite_pls(), k, name="bmatching-bipartite-dpls", kind="DPLS",
        universe=lambda cfg: _bipartite(cfg.graph) and _no_output(cfg))


# ------------------------------------------------------------- odd rings
#
# Ring label: gamma(kappa') | numerator (bitlen kappa') | colour (2) | comparison.
# kappa' is agreed by all nodes and pinned by a comparison certifying
# n <= 2 kappa' + 1; under that bound the APLS checks leave exactly one
# loose node, which must carry the LEADER colour.

def _ring_universe(cfg: ConfigurationGraph) -> bool:
    g = cfg.graph
    return is_ring(g) and g.n % 2 == 1


def _decode_ring(bits: str, idw: int) -> Tuple[int, int, str, str]:
    r = BitReader(bits)
    kappa = r.gamma()
    num = r.uint(kappa.bit_length())
    color = r.take(2)
    return kappa, num, color, r.rest()


def make_odd_ring_edge_cover_pls() -> Scheme:
    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        kappa = (g.n - 1) // 2
        C = decode_edge_set(cfg)
        if strict and len(C) != kappa + 1:
            raise ProverRefusal("cover is not minimum")
        loose = loose_nodes(g, C) if all(d > 0 for d in cover_degrees(g, C).values()) else []
        if strict and len(loose) != 1:
            raise ProverRefusal("expected exactly one loose node")
        if strict or all(d > 0 for d in cover_degrees(g, C).values()):
            y = edge_cover_dual(g, C, kappa)
        else:
            y = {v: (Fraction(0),) for v in g.nodes}
        leader = loose[0] if loose else min(g.nodes)
        colors = le_colors(g, leader)
        comp = comparison_labels(g, {v: -1 for v in g.nodes}, -(2 * kappa + 1), strict=strict)
        codec = codec_for(kappa, kappa + 1)
        return {v: gamma(kappa) + codec.encode(y[v]) + colors[v] + comp[v] for v in g.nodes}

    def verifier(view: LocalView) -> bool:
        idw = view.inp.id_bits
        kappa, num, color, comp = _decode_ring(view.label, idw)
        others = [_decode_ring(x, idw) for x in view.nbr]
        if any(o[0] != kappa for o in others) or num > kappa or any(o[1] > kappa for o in others):
            return False
        D = kappa + 1
        marks = local_port_bits(view.inp, view.out)
        sl = _ports_slice("min", view.inp, (Fraction(num, D),),
                          [(Fraction(o[1], D),) for o in others], [int(m) for m in marks], Fraction(1))
        if not check_local_slice(sl, Fraction(kappa + 1, kappa), Fraction(1)):
            return False
        loose = sum(marks) != 1
        if not le_check(loose, color, [o[2] for o in others]):
            return False
        return comparison_check(view.inp.id, idw, -1, -(2 * kappa + 1), comp, [o[3] for o in others])

    return Scheme(
        name="edge-cover-ring-pls", kind="PLS", problem=Kind.EDGE_COVER.value,
        universe=lambda cfg: _ring_universe(cfg) and _edge_bits_ok(cfg),
        prover=prover, verifier=verifier, forger=lambda cfg: prover(cfg, strict=False),
        parts=lambda inp, lab: dict(zip(("kappa", "dual", "color", "comparison"),
                                        map(str, _decode_ring(lab, inp.id_bits)))),
    )


def make_odd_ring_edge_cover_dpls(k: int) -> Scheme:
    K = 2 * k - 1

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        return comparison_labels(cfg.graph, {v: 1 for v in cfg.graph.nodes}, K, strict=strict)

    return Scheme(
        name="edge-cover-ring-dpls", kind="DPLS", problem=Kind.EDGE_COVER.value,
        universe=lambda cfg: _ring_universe(cfg) and _no_output(cfg),
        prover=prover,
        verifier=lambda view: comparison_check(view.inp.id, view.inp.id_bits, 1, K, view.label, view.nbr),
        forger=lambda cfg: prover(cfg, strict=False),
        params={"k": k, "sense": "min"},
        parts=lambda inp, lab: {"comparison": lab},
    )
