"""The acceptance matrix: eight criteria over every registered scheme."""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, log2
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from . import generators as gen
from .certify import comparison_bound, mst_labels
from .cover_match import alt_distances, available_nodes, cover_degrees, int_distances
from .flow_cut import cut_capacity, flow_dual, flow_lp, flow_primal, local_search_cut, max_flow, min_cut
from .graph import INFINITY, ConfigurationGraph, Edge, Graph, GraphError, NodeAttrs
from .gpls import (Scheme, exhaust_soundness, fuzz_soundness, local_view, prove, proof_size,
                   verify)
from .instances import Candidate, stream
from .lp import (check_dual_feasible, check_primal_feasible, check_relaxed_slackness, dual_vector)
from .oracles import Classification, OracleBudgetError, classify, opt_value
from .problems import Kind, decode_edge_set, decode_edge_values, feasible, node_set_output, objective
from .registry import PRIMARY, build_scheme
from .vca import ds_greedy, harmonic, vc_approx

CONSTANT_SIZE = {
    "edge-cover-apls": None,            # ceil(log(kappa+1)), depends on kappa
    "edge-cover-bipartite-pls": 1,
    "bmatching-apls": None,
    "bmatching-bipartite-pls": 1,
    "flow-pls": 1,
    "maxcut-apls": 1,
}
PRIMAL_DUAL = ("edge-cover-apls", "edge-cover-bipartite-pls", "bmatching-apls",
               "bmatching-bipartite-pls", "flow-pls")
FROM_THRESHOLD = ("vc-apls", "ds-apls", "tsp-apls", "steiner-apls")
FROM_DUAL = ("edge-cover-adpls", "edge-cover-bipartite-dpls", "bmatching-adpls",
          "bmatching-bipartite-dpls")
SIZE_KAPPAS = (1, 2, 3, 7)


@dataclass
class SuiteConfig:
    seed: int = 0
    yes_per_scheme: int = 50
    exhaust_no: int = 20
    exhaust_bits: int = 20
    fuzz_no: int = 3
    fuzz_trials: int = 10_000
    sandwich: int = 200
    lemma_graphs: int = 300
    lemma_all_upto: int = 5
    reduction_yes: int = 10
    reduction_no: int = 2
    size_yes: int = 10
    filter: Optional[str] = None
    corrupt: Tuple[str, ...] = ()
    candidate_limit: int = 20_000


@dataclass
class CriterionResult:
    number: int
    title: str
    status: str                     # "pass" | "fail" | "skipped"
    detail: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        return f"criterion {self.number} {tag}: {self.title}"


@dataclass
class SchemeStats:
    instances: int = 0
    yes: int = 0
    completeness_pass: int = 0
    no_exhaustive: int = 0
    no_fuzzed: int = 0
    soundness_trials: int = 0
    soundness_accepts: int = 0
    max_proof_size: int = 0
    size_bound_violations: int = 0
    seconds: float = 0.0


@dataclass
class SuiteReport:
    seed: int
    criteria: List[CriterionResult]
    schemes: Dict[str, SchemeStats]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def to_dict(self, timing: bool = True) -> dict:
        crit = []
        for c in self.criteria:
            d = {"number": c.number, "title": c.title, "status": c.status, "detail": c.detail}
            if timing:
                d["seconds"] = round(c.seconds, 3)
            crit.append(d)
        schemes = {}
        for name, st in self.schemes.items():
            d = dict(st.__dict__)
            if timing:
                d["seconds"] = round(d["seconds"], 3)
            else:
                d.pop("seconds")
            schemes[name] = d
        return {"seed": self.seed, "passed": self.passed, "criteria": crit, "schemes": schemes}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


# ------------------------------------------------------------------ helpers

class Runner:
    def __init__(self, cfg: SuiteConfig) -> None:
        self.cfg = cfg
        self.stats: Dict[str, SchemeStats] = {}
        self._pools: Dict[Tuple[str, Optional[int]], Dict[str, List[Tuple[Candidate, Classification]]]] = {}
        self._streams: Dict[Tuple[str, Optional[int]], Iterable[Candidate]] = {}

    def selected(self, names: Sequence[str] = PRIMARY) -> List[str]:
        f = self.cfg.filter
        return [n for n in names if f is None or f in n]

    def stat(self, name: str) -> SchemeStats:
        return self.stats.setdefault(name, SchemeStats())

    def scheme(self, s: Scheme) -> Scheme:
        if s.name in self.cfg.corrupt:
            return replace(s, verifier=lambda view: True)
        return s

    def pool(self, name: str, family: str, count: int, kappa: Optional[int] = None,
             keep=lambda c, cl: True) -> List[Tuple[Candidate, Classification]]:
        """At least ``count`` classified candidates of ``family`` (if the stream yields them)."""
        key = (name, kappa)
        pools = self._pools.setdefault(key, {"yes": [], "no": [], "gap": []})
        it = self._streams.setdefault(key, stream(name, self.cfg.seed, kappa))
        picked = [p for p in pools[family] if keep(*p)]
        seen = 0
        while len(picked) < count and seen < self.cfg.candidate_limit:
            c = next(it)
            seen += 1
            try:
                cl = classify(c.scheme, c.cfg)
            except OracleBudgetError:
                continue
            c = Candidate(self.scheme(c.scheme), c.cfg, c.tag)
            pools[cl.family].append((c, cl))
            self.stat(name).instances += 1
            if cl.family == family and keep(c, cl):
                picked.append((c, cl))
        return picked[:max(count, 0)] if len(picked) >= count else picked


def _comparison_parts(s: Scheme, cfg: ConfigurationGraph, labels: Mapping[int, str]) -> List[Tuple[Dict[int, str], Dict[int, int]]]:
    """Comparison sub-labels of ``labels`` with the per-node values they aggregate."""
    g = cfg.graph
    out: List[Tuple[Dict[int, str], Dict[int, int]]] = []
    if s.parts is None:
        return out
    parts = {v: s.parts(cfg.inputs[v], labels[v]) for v in g.nodes}
    if "lam" in s.params:
        approx = {v: parts[v]["approx"] for v in g.nodes}
        lam = s.params["lam"]
        h = {v: lam(local_view(ConfigurationGraph(g, cfg.output), approx, v)) for v in g.nodes}  # type: ignore[operator]
        out.append(({v: parts[v]["comparison"] for v in g.nodes}, h))
    elif "f_local" in s.params:
        f_local = s.params["f_local"]
        h = {v: f_local(*cfg.state(v)) for v in g.nodes}  # type: ignore[operator]
        out.append(({v: parts[v]["comparison_ge"] for v in g.nodes}, h))
        out.append(({v: parts[v]["comparison_le"] for v in g.nodes}, h))
        f = objective(Kind(s.problem), cfg)
        inner = s.params["inner"](f)  # type: ignore[operator]
        inner_labels = {v: parts[v]["inner"] for v in g.nodes}
        out.extend(_comparison_parts(inner, ConfigurationGraph(g), inner_labels))
    elif "h" in s.params and s.kind == "ADPLS":
        hf = s.params["h"]
        out.append(({v: parts[v]["comparison"] for v in g.nodes}, {v: hf(cfg.inputs[v]) for v in g.nodes}))  # type: ignore[operator]
    elif s.name in ("edge-cover-ring-pls", "edge-cover-ring-dpls"):
        out.append(({v: parts[v]["comparison"] for v in g.nodes}, {v: 1 for v in g.nodes}))
    return out


def _H(h: Mapping[int, int]) -> int:
    return max([1] + [abs(x).bit_length() for x in h.values()])


# ---------------------------------------------------------------- criterion 1

def criterion_sizes(r: Runner) -> CriterionResult:
    t0 = time.time()
    bad: List[str] = []
    checked = 0
    names = r.selected()
    for name in names:
        if name in ("edge-cover-apls", "bmatching-apls"):
            for kappa in SIZE_KAPPAS:
                want = ceil(log2(kappa + 1))
                for c, _ in r.pool(name, "yes", r.cfg.size_yes, kappa=kappa):
                    size = proof_size(prove(c.scheme, c.cfg))
                    checked += 1
                    if size != want:
                        bad.append(f"{name} kappa={kappa} {c.tag}: {size} != {want}")
        elif CONSTANT_SIZE.get(name) is not None:
            want = CONSTANT_SIZE[name]
            for c, _ in r.pool(name, "yes", r.cfg.size_yes):
                size = proof_size(prove(c.scheme, c.cfg))
                checked += 1
                if size != want:
                    bad.append(f"{name} {c.tag}: {size} != {want}")
        for c, _ in r.pool(name, "yes", r.cfg.size_yes):
            labels = prove(c.scheme, c.cfg)
            n = c.cfg.graph.n
            for comp, h in _comparison_parts(c.scheme, c.cfg, labels):
                checked += 1
                size, bound = proof_size(comp), comparison_bound(n, _H(h))
                if size > bound:
                    r.stat(name).size_bound_violations += 1
                    bad.append(f"{name} {c.tag}: comparison {size} > {bound}")
    dt = time.time() - t0
    status = "pass" if not bad and dt < 60 else "fail"
    if not names:
        status = "skipped"
    return CriterionResult(1, "proof sizes match the declared bounds", status,
                           {"checks": checked, "violations": bad[:10], "under_a_minute": dt < 60}, dt)


# ---------------------------------------------------------------- criterion 2

def criterion_completeness(r: Runner) -> CriterionResult:
    t0 = time.time()
    short, failures = [], []
    for name in r.selected():
        t1 = time.time()
        st = r.stat(name)
        cases = r.pool(name, "yes", r.cfg.yes_per_scheme)
        if len(cases) < r.cfg.yes_per_scheme:
            short.append(name)
        for c, _ in cases:
            st.yes += 1
            try:
                labels = prove(c.scheme, c.cfg)
                ok = verify(c.scheme, c.cfg, labels).accept
            except ValueError as exc:
                ok = False
                failures.append(f"{name} {c.tag}: {exc}")
            if ok:
                st.completeness_pass += 1
                st.max_proof_size = max(st.max_proof_size, proof_size(labels))
            elif len(failures) < 10:
                failures.append(f"{name} {c.tag}")
        st.seconds += time.time() - t1
    names = r.selected()
    status = "skipped" if not names else ("pass" if not short and not failures else "fail")
    return CriterionResult(2, f"completeness on >= {r.cfg.yes_per_scheme} yes-instances per scheme", status,
                           {"schemes": len(names), "short_of_instances": short, "failures": failures[:10]},
                           time.time() - t0)


# ---------------------------------------------------------------- criterion 3

def _exhaustible(r: Runner, name: str):
    def keep(c: Candidate, cl: Classification) -> bool:
        return c.cfg.graph.n * _honest_bits_const(c) <= r.cfg.exhaust_bits
    return keep


def _honest_bits_const(c: Candidate) -> int:
    kappa = c.scheme.params.get("kappa")
    return ceil(log2(int(kappa) + 1)) if kappa else 1  # type: ignore[arg-type]


def criterion_exhaustive(r: Runner) -> CriterionResult:
    t0 = time.time()
    short, found = [], []
    names = [n for n in r.selected() if n in CONSTANT_SIZE]
    for name in names:
        t1 = time.time()
        st = r.stat(name)
        cases = r.pool(name, "no", r.cfg.exhaust_no, keep=_exhaustible(r, name))
        if len(cases) < r.cfg.exhaust_no:
            short.append(name)
        for c, _ in cases:
            b = _honest_bits_const(c)
            rep = exhaust_soundness(c.scheme, c.cfg, b, family="no", instance=c.tag)
            st.no_exhaustive += 1
            st.soundness_trials += rep.trials
            st.soundness_accepts += rep.accepts
            if rep.accepts:
                found.append(f"{name} {c.tag}: {rep.counterexample}")
        st.seconds += time.time() - t1
    status = "skipped" if not names else ("pass" if not short and not found else "fail")
    return CriterionResult(3, "exhaustive soundness where n*b <= 20", status,
                           {"schemes": names, "short_of_instances": short, "accepting": found[:5]},
                           time.time() - t0)


# ---------------------------------------------------------------- criterion 4

def criterion_fuzz(r: Runner) -> CriterionResult:
    t0 = time.time()
    short, found, drift = [], [], []
    names = [n for n in r.selected() if n not in CONSTANT_SIZE]
    for name in names:
        t1 = time.time()
        st = r.stat(name)
        cases = r.pool(name, "no", r.cfg.fuzz_no)
        if len(cases) < r.cfg.fuzz_no:
            short.append(name)
        for i, (c, _) in enumerate(cases):
            seed = r.cfg.seed * 1000 + i
            rep = fuzz_soundness(c.scheme, c.cfg, r.cfg.fuzz_trials, seed=seed, family="no", instance=c.tag)
            st.no_fuzzed += 1
            st.soundness_trials += rep.trials
            st.soundness_accepts += rep.accepts
            if rep.accepts:
                found.append(f"{name} {c.tag}: {rep.counterexample}")
            if i == 0:
                again = fuzz_soundness(c.scheme, c.cfg, min(r.cfg.fuzz_trials, 500), seed=seed,
                                       family="no", instance=c.tag)
                first = fuzz_soundness(c.scheme, c.cfg, min(r.cfg.fuzz_trials, 500), seed=seed,
                                       family="no", instance=c.tag)
                if again.to_json() != first.to_json():
                    drift.append(name)
        st.seconds += time.time() - t1
    status = "skipped" if not names else ("pass" if not (short or found or drift) else "fail")
    return CriterionResult(4, f"fuzzed soundness, {r.cfg.fuzz_trials} random + structured labelings", status,
                           {"schemes": len(names), "short_of_instances": short, "accepting": found[:5],
                            "not_reproducible": drift}, time.time() - t0)


# ---------------------------------------------------------------- criterion 5

def _sandwich_vc(rng: random.Random) -> Optional[str]:
    g = gen.random_graph(rng.randint(2, 10), rng.choice((0.2, 0.5)), rng, node_w=10)
    opt, _ = opt_value(Kind.VERTEX_COVER, g)
    tr = vc_approx(g)
    w = sum(g.node_weight(v) for v in tr.U)
    if not all(e.u in tr.U or e.v in tr.U for e in g.edges) or not opt <= w <= 2 * opt:
        return f"vc {g.name}: {w} vs OPT {opt}"
    return None


def _sandwich_ds(rng: random.Random) -> Optional[str]:
    g = gen.random_graph(rng.randint(2, 10), rng.choice((0.2, 0.5)), rng, node_w=10)
    opt, _ = opt_value(Kind.DOMINATING_SET, g)
    tr = ds_greedy(g)
    w = sum(g.node_weight(v) for v in tr.U)
    if sum(tr.d.values()) != w or not opt <= w <= harmonic(g.n) * opt:
        return f"ds {g.name}: {w} vs OPT {opt}"
    return None


def _mst_weight(g: Graph, nodes=None) -> int:
    _, tree = mst_labels(g, nodes)
    return sum(g.edges[i].w or 1 for i in tree)


def _sandwich_tsp(rng: random.Random) -> Optional[str]:
    g = gen.metric_graph(rng.randint(3, 8), rng)
    opt, _ = opt_value(Kind.TSP, g)
    t = _mst_weight(g)
    if not opt <= 2 * t <= 2 * opt:
        return f"tsp {g.name}: 2w(T)={2 * t} vs OPT {opt}"
    return None


def _sandwich_steiner(rng: random.Random) -> Optional[str]:
    n = rng.randint(2, 8)
    g = gen.metric_graph(n, rng, terminals=rng.randint(2, min(n, 5)))
    opt, _ = opt_value(Kind.STEINER, g)
    t = _mst_weight(g, sorted(g.terminals))
    if not opt <= t <= 2 * opt:
        return f"steiner {g.name}: w(T_S)={t} vs OPT {opt}"
    return None


def _sandwich_flow(rng: random.Random) -> Optional[str]:
    g = gen.flow_network(rng.randint(2, 10), rng.choice((0.3, 0.5)), rng, W=rng.choice((3, 10)))
    opt, _ = opt_value(Kind.MAX_FLOW, g)
    fl = max_flow(g)
    side = min_cut(g, fl)
    if fl.value != opt or cut_capacity(g, side) != opt:
        return f"flow {g.name}: {fl.value} / {cut_capacity(g, side)} vs min cut {opt}"
    return None


def _sandwich_cut(rng: random.Random) -> Optional[str]:
    g = gen.random_graph(rng.randint(2, 8), rng.choice((0.3, 0.6)), rng, W=10)
    total = sum(e.w or 1 for e in g.edges)
    s = build_scheme("maxcut-apls")
    candidates = [local_search_cut(g)]
    nodes = list(g.nodes)
    for r_ in range(1, len(nodes)):
        for S in itertools.combinations(nodes, r_):
            candidates.append(frozenset(S))
    for S in candidates:
        cfg = ConfigurationGraph(g, node_set_output(g, S))
        labels = {v: cfg.output[v] for v in g.nodes}
        if verify(s, cfg, labels).accept:
            val = sum(e.w or 1 for e in g.edges if (e.u in S) != (e.v in S))
            if 2 * val < total:
                return f"cut {g.name}: locally accepted cut {sorted(S)} has {val} < {total}/2"
    return None


SANDWICHES = {"vc": _sandwich_vc, "ds": _sandwich_ds, "tsp": _sandwich_tsp,
              "steiner": _sandwich_steiner, "flow": _sandwich_flow, "cut": _sandwich_cut}


def criterion_sandwiches(r: Runner) -> CriterionResult:
    t0 = time.time()
    if r.cfg.filter is not None:
        return CriterionResult(5, "approximation-ratio sandwiches", "skipped", {}, 0.0)
    counts, bad = {}, []
    for key, fn in SANDWICHES.items():
        rng = random.Random(f"sandwich/{key}/{r.cfg.seed}")
        counts[key] = r.cfg.sandwich
        for _ in range(r.cfg.sandwich):
            msg = fn(rng)
            if msg:
                bad.append(msg)
    return CriterionResult(5, f"approximation sandwiches on {r.cfg.sandwich} instances each",
                           "pass" if not bad else "fail", {"instances": counts, "violations": bad[:10]},
                           time.time() - t0)


# ---------------------------------------------------------------- criterion 6

def _pd_pair(c: Candidate, labels: Mapping[int, str]):
    s, g = c.scheme, c.cfg.graph
    if s.name == "flow-pls":
        return flow_lp(g), flow_primal(c.cfg), flow_dual(g, labels), Fraction(1), Fraction(1)
    pd = s.params["pd"]
    lp = pd.family.build(g)
    x = pd.family.primal(c.cfg)
    y = dual_vector(lp, {v: pd.codec.decode(labels[v]) for v in g.nodes})
    return lp, x, y, pd.beta, pd.gamma


def criterion_duality(r: Runner) -> CriterionResult:
    t0 = time.time()
    names = [n for n in r.selected() if n in PRIMAL_DUAL]
    pairs, bad = 0, []
    for name in names:
        for c, _ in r.pool(name, "yes", r.cfg.yes_per_scheme):
            labels = prove(c.scheme, c.cfg)
            lp, x, y, beta, gam = _pd_pair(c, labels)
            pairs += 1
            px, dy = lp.primal_value(x), lp.dual_value(y)
            if not (check_primal_feasible(lp, x) and check_dual_feasible(lp, y)):
                bad.append(f"{name} {c.tag}: infeasible pair")
                continue
            weak = px >= dy if lp.sense == "min" else px <= dy
            if not weak:
                bad.append(f"{name} {c.tag}: weak duality {px} vs {dy}")
            if check_relaxed_slackness(lp, x, y, beta, gam):
                bound = px <= beta * gam * dy if lp.sense == "min" else px * beta * gam >= dy
                if not bound:
                    bad.append(f"{name} {c.tag}: objective bound {px} vs {dy}")
            else:
                bad.append(f"{name} {c.tag}: slackness fails on a prover pair")
    status = "skipped" if not names else ("pass" if not bad else "fail")
    return CriterionResult(6, "weak duality and the relaxed-slackness bound", status,
                           {"pairs": pairs, "violations": bad[:10]}, time.time() - t0)


# ---------------------------------------------------------------- criterion 7

def simple_paths(g: Graph, start: int, ok=lambda edge, step: True):
    """Every simple path from ``start`` whose ``i``-th edge passes ``ok(edge, i)``.

    Paths come back as (edge indices, node sequence) pairs; the filter only
    prunes prefixes that already fail, so the enumeration stays exhaustive.
    """
    out = []

    def go(x: int, visited: Set[int], path: List[int], nodes: List[int]) -> None:
        out.append((list(path), list(nodes)))
        for u in g.neighbors(x):
            i = g.edge_index(x, u)
            if u not in visited and ok(i, len(path) + 1):
                visited.add(u)
                path.append(i)
                nodes.append(u)
                go(u, visited, path, nodes)
                path.pop()
                nodes.pop()
                visited.remove(u)

    go(start, {start}, [], [start])
    return out


def _check_cover(g: Graph, C: Set[int], optimal: bool) -> List[str]:
    bad = []
    deg = cover_degrees(g, frozenset(C))
    loose = [v for v in g.nodes if deg[v] != 1]
    brute: Dict[int, float] = {v: INFINITY for v in g.nodes}
    for u in loose:
        for path, nodes in simple_paths(g, u, lambda i, step: (i in C) == (step % 2 == 1)):
            v = nodes[-1]
            brute[v] = min(brute[v], len(path))
            if optimal and v != u and v in loose and path and path[-1] in C:
                bad.append(f"inflating path {nodes} in {g.name}")
    if int_distances(g, frozenset(C)) != brute:
        bad.append(f"int mismatch in {g.name}")
    if optimal:
        for u in g.nodes:
            if brute[u] != INFINITY and brute[u] % 2 == 1:
                if any(brute[v] > brute[u] + 1 for v in g.neighbors(u)):
                    bad.append(f"int neighbour inequality fails at {u} in {g.name}")
    return bad


def _check_matching(g: Graph, mu: Mapping[int, int], optimal: bool) -> List[str]:
    bad = []
    avail = set(available_nodes(g, mu))
    brute: Dict[int, float] = {v: INFINITY for v in g.nodes}
    for u in avail:
        for path, nodes in simple_paths(g, u, lambda i, step: step % 2 == 1 or mu.get(i, 0) > 0):
            v = nodes[-1]
            brute[v] = min(brute[v], len(path))
            if optimal and len(path) % 2 == 1 and v in avail:
                bad.append(f"augmenting path {nodes} in {g.name}")
    if alt_distances(g, mu) != brute:
        bad.append(f"alt mismatch in {g.name}")
    if optimal:
        for u in g.nodes:
            if brute[u] != INFINITY and brute[u] % 2 == 0:
                if any(brute[v] > brute[u] + 1 for v in g.neighbors(u)):
                    bad.append(f"alt neighbour inequality fails at {u} in {g.name}")
    return bad


def small_connected_graphs(n_max: int):
    """Every connected simple graph on nodes ``0..n-1`` for ``2 <= n <= n_max``."""
    for n in range(2, n_max + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            edges = [Edge(u, v) for j, (u, v) in enumerate(pairs) if mask >> j & 1]
            try:
                yield Graph(range(n), edges, name=f"all{n}_{mask}")
            except GraphError:
                continue


def criterion_lemmas(r: Runner) -> CriterionResult:
    t0 = time.time()
    if r.cfg.filter is not None:
        return CriterionResult(7, "path properties, all graphs n <= 5 plus random n <= 8", "skipped", {}, 0.0)
    rng = random.Random(f"lemmas/{r.cfg.seed}")
    bad: List[str] = []
    covers = matchings = 0
    graphs = list(small_connected_graphs(r.cfg.lemma_all_upto))
    graphs += [gen.random_graph(rng.randint(2, 8), rng.choice((0.2, 0.4, 0.6)), rng, name=f"lemma{i}")
               for i in range(r.cfg.lemma_graphs)]
    for g in graphs:
        _, wit = opt_value(Kind.EDGE_COVER, g)
        C = set(decode_edge_set(ConfigurationGraph(g, wit)))
        bad += _check_cover(g, C, optimal=True)
        covers += 1
        D = set(C) | {j for j in range(g.m) if rng.random() < 0.4}
        bad += _check_cover(g, D, optimal=len(D) == len(C))
        covers += 1
        gb = Graph({v: NodeAttrs(b=rng.randint(1, 2)) for v in g.nodes}, g.edges, W=2, name=g.name)
        _, wit = opt_value(Kind.B_MATCHING, gb)
        mu = decode_edge_values(ConfigurationGraph(gb, wit))
        bad += _check_matching(gb, mu, optimal=True)
        matchings += 1
        nu = {j: x - 1 for j, x in mu.items() if x > 1 or rng.random() < 0.5}
        nu = {j: x for j, x in nu.items() if x > 0}
        bad += _check_matching(gb, nu, optimal=sum(nu.values()) == sum(mu.values()))
        matchings += 1
    return CriterionResult(7, "path properties, all graphs n <= 5 plus random n <= 8", "pass" if not bad else "fail",
                           {"covers": covers, "matchings": matchings, "violations": bad[:10]},
                           time.time() - t0)


# ---------------------------------------------------------------- criterion 8

def _far_feasible(c: Candidate, cl: Classification) -> bool:
    try:
        return feasible(Kind(c.scheme.problem), c.cfg)
    except ValueError:
        return False


def criterion_reductions(r: Runner) -> CriterionResult:
    t0 = time.time()
    names = [n for n in r.selected() if n in FROM_THRESHOLD + FROM_DUAL]
    bad, short, counts = [], [], {}
    for name in names:
        yes = r.pool(name, "yes", r.cfg.reduction_yes)
        keep = _far_feasible if name in FROM_THRESHOLD else (lambda c, cl: True)
        no = r.pool(name, "no", r.cfg.reduction_no, keep=keep)
        if len(yes) < r.cfg.reduction_yes or len(no) < r.cfg.reduction_no:
            short.append(name)
        for c, _ in yes:
            if not verify(c.scheme, c.cfg, prove(c.scheme, c.cfg)).accept:
                bad.append(f"{name} {c.tag}: yes rejected")
        for i, (c, _) in enumerate(no):
            rep = fuzz_soundness(c.scheme, c.cfg, r.cfg.fuzz_trials, seed=r.cfg.seed * 7919 + i,
                                 family="no", instance=c.tag)
            if rep.accepts:
                bad.append(f"{name} {c.tag}: fuzz accept {rep.counterexample}")
        counts[name] = {"yes": len(yes), "no": len(no)}
    status = "skipped" if not names else ("pass" if not bad and not short else "fail")
    return CriterionResult(8, "reduction round-trips", status,
                           {"schemes": counts, "short_of_instances": short, "violations": bad[:10]},
                           time.time() - t0)


CRITERIA = (criterion_sizes, criterion_completeness, criterion_exhaustive, criterion_fuzz,
            criterion_sandwiches, criterion_duality, criterion_lemmas, criterion_reductions)


def run_suite(cfg: Optional[SuiteConfig] = None, only: Optional[Iterable[int]] = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    r = Runner(cfg)
    pick = set(only) if only is not None else None
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        if pick is not None and i not in pick:
            continue
        results.append(fn(r))
    return SuiteReport(cfg.seed, results, dict(sorted(r.stats.items())))
