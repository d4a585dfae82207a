"""Exhaustive solvers and yes/no/gap classification.

Nothing here calls a prover-side algorithm: every optimum comes from
plain enumeration so it can serve as ground truth for the schemes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import ConfigurationGraph, Graph
from .gpls import Scheme, check_universe
from .problems import (Kind, OutputError, decode_edge_set, edge_set_output,
                       edge_value_output, feasible, node_set_output, objective, sense)

NODE_BUDGET = 12
TOUR_BUDGET = 9


class OracleBudgetError(ValueError):
    """Instance too large for exhaustive search."""


@dataclass(frozen=True)
class Classification:
    family: str                      # "yes" | "no" | "gap"
    opt_value: Optional[int]
    witness: Optional[Dict[int, str]] = None


def _budget(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise OracleBudgetError(f"n={g.n} exceeds the oracle budget of {limit}")


# ------------------------------------------------------------ per problem

def _edge_cover(g: Graph) -> Tuple[int, FrozenSet[int]]:
    best: List = [g.m + 1, None]
    inc = {v: [g.edge_index(e.u, e.v) for e in g.port_edges(v)] for v in g.nodes}

    def go(chosen: Tuple[int, ...], covered: FrozenSet[int]) -> None:
        if len(chosen) >= best[0]:
            return
        left = [v for v in g.nodes if v not in covered]
        if not left:
            best[0], best[1] = len(chosen), frozenset(chosen)
            return
        # every edge covers at most two new nodes
        if len(chosen) + (len(left) + 1) // 2 >= best[0]:
            return
        v = left[0]
        for i in inc[v]:
            e = g.edges[i]
            go(chosen + (i,), covered | {e.u, e.v})

    go((), frozenset())
    return best[0], best[1]


def _b_matching(g: Graph) -> Tuple[int, Dict[int, int]]:
    nodes = list(g.nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    edges = g.edges

    @lru_cache(maxsize=None)
    def go(j: int, cap: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
        if j == len(edges):
            return 0, ()
        e = edges[j]
        a, b = pos[e.u], pos[e.v]
        best = (-1, ())
        for x in range(min(cap[a], cap[b]) + 1):
            c = list(cap)
            c[a] -= x
            c[b] -= x
            val, rest = go(j + 1, tuple(c))
            if val + x > best[0]:
                best = (val + x, (x,) + rest)
        return best

    val, mult = go(0, tuple(g.b(v) for v in nodes))
    go.cache_clear()
    return val, {i: x for i, x in enumerate(mult) if x}


def _node_subsets(g: Graph):
    nodes = list(g.nodes)
    for r in range(len(nodes) + 1):
        for S in itertools.combinations(nodes, r):
            yield frozenset(S)


def _vertex_cover(g: Graph) -> Tuple[int, FrozenSet[int]]:
    return min(((sum(g.node_weight(v) for v in S), S) for S in _node_subsets(g)
                if all(e.u in S or e.v in S for e in g.edges)), key=lambda t: (t[0], sorted(t[1])))


def _dominating_set(g: Graph) -> Tuple[int, FrozenSet[int]]:
    def dom(S):
        return all(v in S or any(u in S for u in g.neighbors(v)) for v in g.nodes)
    return min(((sum(g.node_weight(v) for v in S), S) for S in _node_subsets(g) if dom(S)),
               key=lambda t: (t[0], sorted(t[1])))


def _max_cut(g: Graph) -> Tuple[int, FrozenSet[int]]:
    first, rest = g.nodes[0], list(g.nodes[1:])
    best = (-1, frozenset())
    for r in range(len(rest)):
        for T in itertools.combinations(rest, r):
            S = frozenset((first,) + T)
            val = sum(e.w or 1 for e in g.edges if (e.u in S) != (e.v in S))
            if val > best[0]:
                best = (val, S)
    return best


def _tsp(g: Graph) -> Tuple[int, FrozenSet[int]]:
    first, rest = g.nodes[0], list(g.nodes[1:])
    best = None
    for perm in itertools.permutations(rest):
        if perm and perm[0] > perm[-1]:
            continue
        tour = (first,) + perm
        idx = []
        for a, b in zip(tour, tour[1:] + tour[:1]):
            if not g.has_edge(a, b):
                break
            idx.append(g.edge_index(a, b))
        else:
            val = sum(g.edges[i].w or 1 for i in idx)
            if best is None or val < best[0]:
                best = (val, frozenset(idx))
    if best is None:
        raise OutputError("graph has no Hamiltonian cycle")
    return best


def _prim(g: Graph, nodes: Sequence[int]) -> Tuple[int, FrozenSet[int]]:
    """Prim on the induced subgraph with (w, min id, max id) tie-breaking."""
    members = set(nodes)
    start = min(members)
    inside = {start}
    tree = set()
    total = 0
    while inside != members:
        cand = [((e.w or 1, min(e.u, e.v), max(e.u, e.v)), e) for e in g.edges
                if (e.u in inside) != (e.v in inside) and e.u in members and e.v in members]
        if not cand:
            raise OutputError("induced subgraph is disconnected")
        key, e = min(cand, key=lambda t: t[0])
        tree.add(g.edge_index(e.u, e.v))
        inside |= {e.u, e.v}
        total += key[0]
    return total, frozenset(tree)


def _steiner(g: Graph) -> Tuple[int, FrozenSet[int]]:
    S = sorted(g.terminals)
    others = [v for v in g.nodes if v not in g.terminals]
    best = None
    for r in range(len(others) + 1):
        for X in itertools.combinations(others, r):
            try:
                val, tree = _prim(g, S + list(X))
            except OutputError:
                continue
            if best is None or val < best[0]:
                best = (val, tree)
    assert best is not None
    return best


def _min_cut_value(g: Graph) -> Tuple[int, FrozenSet[int]]:
    s, t = g.source, g.sink
    inner = [v for v in g.nodes if v not in (s, t)]
    best = None
    for r in range(len(inner) + 1):
        for T in itertools.combinations(inner, r):
            side = frozenset((s,) + T)
            val = sum(e.c or 0 for e in g.edges if e.u in side and e.v not in side)
            if best is None or val < best[0]:
                best = (val, side)
    assert best is not None
    return best


def opt_value(kind: Kind | str, g: Graph) -> Tuple[int, Optional[Dict[int, str]]]:
    """Exact optimum and an optimal output assignment (``None`` for flow)."""
    kind = Kind(kind)
    if kind is Kind.EDGE_COVER:
        _budget(g, NODE_BUDGET)
        val, C = _edge_cover(g)
        return val, edge_set_output(g, [g.edges[i].key for i in C])
    if kind is Kind.B_MATCHING:
        _budget(g, NODE_BUDGET)
        val, mu = _b_matching(g)
        return val, edge_value_output(g, mu)
    if kind is Kind.VERTEX_COVER:
        _budget(g, NODE_BUDGET)
        val, S = _vertex_cover(g)
        return val, node_set_output(g, S)
    if kind is Kind.DOMINATING_SET:
        _budget(g, NODE_BUDGET)
        val, S = _dominating_set(g)
        return val, node_set_output(g, S)
    if kind is Kind.MAX_CUT:
        _budget(g, NODE_BUDGET)
        val, S = _max_cut(g)
        return val, node_set_output(g, S)
    if kind is Kind.TSP:
        _budget(g, TOUR_BUDGET)
        val, T = _tsp(g)
        return val, edge_set_output(g, [g.edges[i].key for i in T])
    if kind is Kind.STEINER:
        _budget(g, TOUR_BUDGET)
        val, T = _steiner(g)
        return val, edge_set_output(g, [g.edges[i].key for i in T])
    if kind is Kind.MST:
        val, T = _prim(g, g.nodes)
        return val, edge_set_output(g, [g.edges[i].key for i in T])
    if kind is Kind.MAX_FLOW:
        _budget(g, 2 + 14)
        return _min_cut_value(g)[0], None
    raise ValueError(f"no optimum for {kind.value}")


def min_cut_side(g: Graph) -> FrozenSet[int]:
    return _min_cut_value(g)[1]


def mst_edge_set(g: Graph, nodes: Optional[Iterable[int]] = None) -> FrozenSet[int]:
    return _prim(g, list(g.nodes if nodes is None else nodes))[1]


# ----------------------------------------------------------- classification

def scheme_alpha(s: Scheme, n: int):
    fn = s.params.get("alpha_fn")
    return fn(n) if fn is not None else s.alpha  # type: ignore[operator]


def _scheme_sense(s: Scheme) -> str:
    return str(s.params.get("sense") or sense(Kind(s.problem)))


def _family_opt(kind_s: str, sns: str, f: int, opt: int, alpha) -> str:
    if f == opt:
        return "yes"
    if sns == "min":
        return "no" if f > alpha * opt else "gap"
    return "no" if f * alpha < opt else "gap"


def _family_threshold(sns: str, k: int, opt: int, alpha) -> str:
    if sns == "min":
        if opt >= k:
            return "yes"
        return "no" if opt * alpha < k else "gap"
    if opt <= k:
        return "yes"
    return "no" if opt > alpha * k else "gap"


def _classify_feasibility(s: Scheme, cfg: ConfigurationGraph) -> Classification:
    kind = Kind(s.problem)
    g = cfg.graph
    try:
        ok = feasible(kind, cfg)
    except OutputError:
        ok = False
    if ok and kind is Kind.MST:
        ok = decode_edge_set(cfg) == mst_edge_set(g)
    return Classification("yes" if ok else "no", None)


def classify(s: Scheme, cfg: ConfigurationGraph) -> Classification:
    """Family of ``cfg`` for scheme ``s``; raises outside the universe."""
    check_universe(s, cfg)
    g = cfg.graph
    if s.kind == "comparison":
        h = s.params["h"]
        total = sum(h(*cfg.state(v)) for v in g.nodes)  # type: ignore[operator]
        return Classification("yes" if total >= s.params["k"] else "no", total)
    if s.kind == "feasibility":
        return _classify_feasibility(s, cfg)
    kind = Kind(s.problem)
    sns = _scheme_sense(s)
    alpha = scheme_alpha(s, g.n)
    if s.kind in ("PLS", "APLS"):
        opt, wit = opt_value(kind, g)
        try:
            ok = feasible(kind, cfg)
        except OutputError:
            ok = False
        if not ok:
            return Classification("no", opt, wit)
        f = objective(kind, cfg)
        return Classification(_family_opt(s.kind, sns, f, opt, alpha), opt, wit)
    if s.kind in ("DPLS", "ADPLS"):
        opt, wit = opt_value(kind, g)
        return Classification(_family_threshold(sns, int(s.params["k"]), opt, alpha), opt, wit)
    raise ValueError(f"cannot classify scheme kind {s.kind}")
