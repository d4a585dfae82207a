"""Vertex cover, dominating set, metric TSP and metric Steiner tree.

Each threshold scheme certifies a centralised approximation plus a
comparison; the output-certifying versions wrap a feasibility scheme and
the threshold scheme at ``k = f(output)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import lcm, log
from typing import Dict, FrozenSet, Optional, Sequence

from .bits import BitReader, DecodeError, pack, read_nat, nat, uint, unpack
from .certify import (comparison_check, comparison_labels, decode_mst, encode_mst,
                      hamiltonian_feasibility_scheme, mst_check, mst_labels,
                      terminal_tree_feasibility_scheme)
from .graph import ConfigurationGraph, Graph, GraphError, LocalInput, check_metric
from .gpls import LabelAssignment, LocalView, Scheme
from .lp import make_vca_adpls, reduce_adpls_to_apls
from .problems import Kind, local_node_bit, local_port_bits, objective

N_CLAIM_LIMIT = 4096


def _no_output(cfg: ConfigurationGraph) -> bool:
    return all(cfg.output[v] == "" for v in cfg.graph.nodes)


def _node_bits_ok(cfg: ConfigurationGraph) -> bool:
    return all(len(cfg.output[v]) == 1 for v in cfg.graph.nodes)


def _port_bits_ok(cfg: ConfigurationGraph) -> bool:
    from .problems import OutputError, decode_edge_set
    try:
        decode_edge_set(cfg)
        return True
    except OutputError:
        return False


# ------------------------------------------------------------ vertex cover

@dataclass(frozen=True)
class VcTrace:
    U: FrozenSet[int]
    residual: Dict[int, int]
    charged: Dict[int, Optional[int]]


def vc_approx(g: Graph) -> VcTrace:
    res = {v: g.node_weight(v) for v in g.nodes}
    charged: Dict[int, Optional[int]] = {v: None for v in g.nodes}
    U = set()
    for e in sorted(g.edges, key=lambda e: (min(e.u, e.v), max(e.u, e.v))):
        if e.u in U or e.v in U:
            continue
        a, b = sorted((e.u, e.v), key=lambda x: (res[x], x))
        U.add(a)
        res[b] -= res[a]
        charged[a] = b
    return VcTrace(frozenset(U), res, charged)


def _vc_width(inp: LocalInput) -> int:
    return 1 + 2 * inp.id_bits + inp.wbits


def _vc_decode(bits: str, inp: LocalInput):
    idw = inp.id_bits
    if len(bits) != _vc_width(inp):
        raise DecodeError("vertex cover label has wrong length")
    r = BitReader(bits)
    return r.take(1) == "1", r.uint(idw), r.uint(idw), r.uint(inp.wbits)


def vc_approx_labels(cfg: ConfigurationGraph) -> LabelAssignment:
    g = cfg.graph
    tr = vc_approx(g)
    idw, wb = g.id_bits, max(1, g.W.bit_length())
    out = {}
    for v in g.nodes:
        c = tr.charged[v]
        out[v] = ("1" if v in tr.U else "0") + uint(v, idw) + uint(v if c is None else c, idw) \
            + uint(tr.residual[v], wb)
    return out


def vc_approx_check(view: LocalView) -> bool:
    inp = view.inp
    member, own, cid, res = _vc_decode(view.label, inp)
    others = [_vc_decode(x, inp) for x in view.nbr]
    if own != inp.id:
        return False
    if not member and not all(o[0] for o in others):
        return False
    if member:
        if cid == own or not any(o[1] == cid for o in others):
            return False
    elif cid != own:
        return False
    w = inp.w if inp.w is not None else 1
    return w == res + sum(o[3] for o in others if o[0] and o[2] == own)


def _vc_lambda(view: LocalView) -> int:
    member = view.label[0] == "1"
    return (view.inp.w or 1) if member else 0


def make_vc_adpls(k: int) -> Scheme:
    return make_vca_adpls(
        name="vc-adpls", problem=Kind.VERTEX_COVER.value,
        universe=lambda cfg: not cfg.graph.directed and _no_output(cfg),
        approx_prover=vc_approx_labels, approx_verifier=vc_approx_check,
        lam=_vc_lambda, threshold=lambda view: k, alpha=Fraction(2), sense="min", k=k,
    )


def vc_feasibility_scheme() -> Scheme:
    def verifier(view: LocalView) -> bool:
        mine = local_node_bit(view.inp, view.out)
        if view.label != ("1" if mine else "0") or any(x not in "01" or len(x) != 1 for x in view.nbr):
            return False
        return mine or all(x == "1" for x in view.nbr)

    def prover(cfg: ConfigurationGraph) -> LabelAssignment:
        return dict(cfg.output)

    return Scheme(name="vc-feasibility", kind="feasibility", problem=Kind.VERTEX_COVER.value,
                  universe=_node_bits_ok, prover=prover, verifier=verifier, forger=prover)


def make_vc_apls() -> Scheme:
    return reduce_adpls_to_apls(
        name="vc-apls", problem=Kind.VERTEX_COVER.value, feas=vc_feasibility_scheme(),
        adpls_factory=make_vc_adpls,
        f_local=lambda inp, out: (inp.w or 1) if out == "1" else 0, scale=1,
        alpha=Fraction(2), sense="min",
        universe=lambda cfg: not cfg.graph.directed and _node_bits_ok(cfg),
        objective=lambda cfg: objective(Kind.VERTEX_COVER, cfg),
    )


# ---------------------------------------------------------- dominating set

@dataclass(frozen=True)
class DsTrace:
    U: FrozenSet[int]
    d: Dict[int, Fraction]


def ds_greedy(g: Graph) -> DsTrace:
    covered: set = set()
    U: set = set()
    d: Dict[int, Fraction] = {}
    while len(covered) < g.n:
        best = None
        for z in g.nodes:
            if z in U:
                continue
            fresh = [u for u in (z,) + g.neighbors(z) if u not in covered]
            if not fresh:
                continue
            ratio = Fraction(g.node_weight(z), len(fresh))
            if best is None or (ratio, z) < (best[0], best[1]):
                best = (ratio, z, fresh)
        assert best is not None
        ratio, z, fresh = best
        U.add(z)
        for u in fresh:
            d[u] = ratio
        covered.update(fresh)
    return DsTrace(frozenset(U), d)


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def lcm_upto(n: int) -> int:
    return lcm(*range(1, n + 1)) if n >= 1 else 1


def ds_alpha(n: int) -> float:
    return log(n) + 1


def ds_approx_labels(cfg: ConfigurationGraph) -> LabelAssignment:
    g = cfg.graph
    tr = ds_greedy(g)
    n = g.n
    ge = comparison_labels(g, {v: 1 for v in g.nodes}, n)
    le = comparison_labels(g, {v: -1 for v in g.nodes}, -n)
    return {v: pack([nat(tr.d[v].numerator), nat(tr.d[v].denominator), nat(n), ge[v], le[v]])
            for v in g.nodes}


def _ds_decode(bits: str):
    num, den, n, ge, le = unpack(bits, 5)
    return read_nat(num), read_nat(den), read_nat(n), ge, le


def ds_approx_check(view: LocalView) -> bool:
    inp = view.inp
    num, den, n, ge, le = _ds_decode(view.label)
    others = [_ds_decode(x) for x in view.nbr]
    if den < 1 or n < 1 or n > N_CLAIM_LIMIT or any(o[2] != n or o[1] < 1 for o in others):
        return False
    idw = inp.id_bits
    if not comparison_check(inp.id, idw, 1, n, ge, [o[3] for o in others]):
        return False
    if not comparison_check(inp.id, idw, -1, -n, le, [o[4] for o in others]):
        return False
    if (lcm_upto(n) * num) % den:
        return False
    total = Fraction(num, den) + sum((Fraction(o[0], o[1]) for o in others), Fraction(0))
    return total <= harmonic(n) * (inp.w or 1)


def _ds_scale(view: LocalView) -> int:
    return lcm_upto(_ds_decode(view.label)[2])


def _ds_lambda(view: LocalView) -> int:
    num, den, n, _, _ = _ds_decode(view.label)
    return lcm_upto(n) * num // den


def make_ds_adpls(k: int) -> Scheme:
    return make_vca_adpls(
        name="ds-adpls", problem=Kind.DOMINATING_SET.value,
        universe=lambda cfg: not cfg.graph.directed and _no_output(cfg),
        approx_prover=ds_approx_labels, approx_verifier=ds_approx_check,
        lam=_ds_lambda, threshold=lambda view: _ds_scale(view) * k,
        alpha=float("nan"), sense="min", k=k, params={"alpha_fn": ds_alpha},
    )


def ds_feasibility_scheme() -> Scheme:
    def verifier(view: LocalView) -> bool:
        mine = local_node_bit(view.inp, view.out)
        if view.label != ("1" if mine else "0") or any(x not in "01" or len(x) != 1 for x in view.nbr):
            return False
        return mine or any(x == "1" for x in view.nbr)

    def prover(cfg: ConfigurationGraph) -> LabelAssignment:
        return dict(cfg.output)

    return Scheme(name="ds-feasibility", kind="feasibility", problem=Kind.DOMINATING_SET.value,
                  universe=_node_bits_ok, prover=prover, verifier=verifier, forger=prover)


def make_ds_apls() -> Scheme:
    s = reduce_adpls_to_apls(
        name="ds-apls", problem=Kind.DOMINATING_SET.value, feas=ds_feasibility_scheme(),
        adpls_factory=make_ds_adpls,
        f_local=lambda inp, out: (inp.w or 1) if out == "1" else 0, scale=1,
        alpha=float("nan"), sense="min",
        universe=lambda cfg: not cfg.graph.directed and _node_bits_ok(cfg),
        objective=lambda cfg: objective(Kind.DOMINATING_SET, cfg),
    )
    params = dict(s.params)
    params["alpha_fn"] = ds_alpha
    return replace(s, params=params)


# -------------------------------------------------------------- metric TSP

def _metric_universe(cfg: ConfigurationGraph, min_n: int) -> bool:
    g = cfg.graph
    if g.directed or g.n < min_n or not g.is_complete():
        return False
    try:
        return check_metric(g)
    except GraphError:
        return False


def _mst_parent_weight(inp: LocalInput, label, nbrs: Sequence) -> int:
    if label.own == label.root:
        return 0
    for j, o in enumerate(nbrs):
        if o is not None and o.own == label.parent:
            w = inp.ports[j].w
            return 1 if w is None else w
    raise DecodeError("parent not adjacent")


def tsp_approx_labels(cfg: ConfigurationGraph) -> LabelAssignment:
    g = cfg.graph
    labs, _ = mst_labels(g)
    wb = max(1, g.W.bit_length())
    return {v: encode_mst(labs[v], g.id_bits, wb) for v in g.nodes}


def _tsp_decode(view: LocalView):
    idw, wb = view.inp.id_bits, view.inp.wbits
    return decode_mst(view.label, idw, wb), [decode_mst(x, idw, wb) for x in view.nbr]


def make_tsp_adpls(k: int) -> Scheme:
    def check(view: LocalView) -> bool:
        me, nbrs = _tsp_decode(view)
        return mst_check(view.inp, me, nbrs)

    def lam(view: LocalView) -> int:
        me, nbrs = _tsp_decode(view)
        return 2 * _mst_parent_weight(view.inp, me, nbrs)

    return make_vca_adpls(
        name="tsp-adpls", problem=Kind.TSP.value,
        universe=lambda cfg: _metric_universe(cfg, 3) and _no_output(cfg),
        approx_prover=tsp_approx_labels, approx_verifier=check, lam=lam,
        threshold=lambda view: k, alpha=Fraction(2), sense="min", k=k,
    )


def _marked_weight(inp: LocalInput, out: str) -> int:
    marks = local_port_bits(inp, out)
    return sum((1 if p.w is None else p.w) for p, m in zip(inp.ports, marks) if m)


def make_tsp_apls() -> Scheme:
    return reduce_adpls_to_apls(
        name="tsp-apls", problem=Kind.TSP.value, feas=hamiltonian_feasibility_scheme(),
        adpls_factory=make_tsp_adpls, f_local=_marked_weight, scale=2,
        alpha=Fraction(2), sense="min",
        universe=lambda cfg: _metric_universe(cfg, 3) and _port_bits_ok(cfg),
        objective=lambda cfg: objective(Kind.TSP, cfg),
    )


# ------------------------------------------------------------ metric Steiner

def steiner_approx_labels(cfg: ConfigurationGraph) -> LabelAssignment:
    g = cfg.graph
    terms = sorted(g.terminals)
    labs, _ = mst_labels(g, terms)
    wb = max(1, g.W.bit_length())
    return {v: ("1" + encode_mst(labs[v], g.id_bits, wb)) if v in labs else "0" for v in g.nodes}


def _steiner_decode(view: LocalView):
    idw, wb = view.inp.id_bits, view.inp.wbits

    def one(bits: str):
        if bits == "0":
            return None
        if not bits or bits[0] != "1":
            raise DecodeError("bad participant flag")
        return decode_mst(bits[1:], idw, wb)

    return one(view.label), [one(x) for x in view.nbr]


def make_steiner_adpls(k: int) -> Scheme:
    def check(view: LocalView) -> bool:
        me, nbrs = _steiner_decode(view)
        if me is None:
            return not view.inp.terminal
        return view.inp.terminal and mst_check(view.inp, me, nbrs)

    def lam(view: LocalView) -> int:
        me, nbrs = _steiner_decode(view)
        return 0 if me is None else _mst_parent_weight(view.inp, me, nbrs)

    return make_vca_adpls(
        name="steiner-adpls", problem=Kind.STEINER.value,
        universe=lambda cfg: _metric_universe(cfg, 2) and len(cfg.graph.terminals) >= 2
        and _no_output(cfg),
        approx_prover=steiner_approx_labels, approx_verifier=check, lam=lam,
        threshold=lambda view: k, alpha=Fraction(2), sense="min", k=k,
    )


def make_steiner_apls() -> Scheme:
    return reduce_adpls_to_apls(
        name="steiner-apls", problem=Kind.STEINER.value, feas=terminal_tree_feasibility_scheme(),
        adpls_factory=make_steiner_adpls, f_local=_marked_weight, scale=2,
        alpha=Fraction(2), sense="min",
        universe=lambda cfg: _metric_universe(cfg, 2) and len(cfg.graph.terminals) >= 2
        and _port_bits_ok(cfg),
        objective=lambda cfg: objective(Kind.STEINER, cfg),
    )
