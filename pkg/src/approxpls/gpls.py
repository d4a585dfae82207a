"""Scheme abstraction, the one-round local verifier and soundness attacks.

A verifier is a function of a :class:`LocalView` only; :func:`verify`
builds those views from a configuration graph and a label assignment,
so no verifier can reach neighbour states or global data.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .bits import DecodeError, is_bits
from .graph import ConfigurationGraph, GraphError, LocalInput

LabelAssignment = Dict[int, str]
EXHAUST_BUDGET = 24


class UniverseError(ValueError):
    """Configuration graph lies outside the scheme's universe."""


class ProverRefusal(ValueError):
    """The prover was asked to certify something outside the yes-family."""


@dataclass(frozen=True)
class LocalView:
    """<S(v), L(v), L^N(v)>: everything a node may look at."""

    inp: LocalInput
    out: str
    label: str
    nbr: Tuple[str, ...]

    @property
    def state(self) -> Tuple[LocalInput, str]:
        return self.inp, self.out


@dataclass(frozen=True)
class Scheme:
    name: str
    kind: str
    universe: Callable[[ConfigurationGraph], bool]
    prover: Callable[[ConfigurationGraph], LabelAssignment]
    verifier: Callable[[LocalView], bool]
    problem: Optional[str] = None
    alpha: Fraction | float = Fraction(1)
    params: Mapping[str, object] = field(default_factory=dict)
    forger: Optional[Callable[[ConfigurationGraph], Optional[LabelAssignment]]] = None
    parts: Optional[Callable[[LocalInput, str], Dict[str, str]]] = None

    @property
    def k(self):
        return self.params.get("k")


@dataclass(frozen=True)
class Verdict:
    phi: Mapping[int, bool]

    @property
    def accept(self) -> bool:
        return all(self.phi.values())

    def rejecting(self) -> List[int]:
        return sorted(v for v, ok in self.phi.items() if not ok)


def local_view(cfg: ConfigurationGraph, labels: Mapping[int, str], v: int) -> LocalView:
    g = cfg.graph
    return LocalView(
        inp=cfg.inputs[v],
        out=cfg.output[v],
        label=labels[v],
        nbr=tuple(labels[u] for u in g.neighbors(v)),
    )


def run_verifier(s: Scheme, view: LocalView) -> bool:
    if not is_bits(view.label) or not all(is_bits(x) for x in view.nbr):
        return False
    try:
        return bool(s.verifier(view))
    except (DecodeError, ValueError, IndexError, KeyError, ZeroDivisionError):
        return False


def check_universe(s: Scheme, cfg: ConfigurationGraph) -> None:
    try:
        ok = s.universe(cfg)
    except GraphError as exc:
        raise UniverseError(f"{s.name}: {exc}") from None
    if not ok:
        raise UniverseError(f"{s.name}: configuration outside the universe")


def prove(s: Scheme, cfg: ConfigurationGraph) -> LabelAssignment:
    check_universe(s, cfg)
    labels = s.prover(cfg)
    missing = [v for v in cfg.graph.nodes if v not in labels]
    if missing:
        raise RuntimeError(f"{s.name}: prover left node {missing[0]} unlabeled")
    return labels


def verify(s: Scheme, cfg: ConfigurationGraph, labels: Mapping[int, str],
           order: Optional[Sequence[int]] = None) -> Verdict:
    nodes = order if order is not None else cfg.graph.nodes
    missing = [v for v in cfg.graph.nodes if v not in labels]
    if missing:
        raise ValueError(f"labels missing for node {missing[0]}")
    return Verdict({v: run_verifier(s, local_view(cfg, labels, v)) for v in nodes})


def accepts(s: Scheme, cfg: ConfigurationGraph, labels: Mapping[int, str]) -> bool:
    """Short-circuiting global accept."""
    for v in cfg.graph.nodes:
        if not run_verifier(s, local_view(cfg, labels, v)):
            return False
    return True


def proof_size(labels: Mapping[int, str]) -> int:
    return max((len(x) for x in labels.values()), default=0)


# ------------------------------------------------------------------ reports

@dataclass
class SoundnessReport:
    scheme: str
    instance: str
    family: str
    mode: str
    trials: int = 0
    accepts: int = 0
    counterexample: Optional[Dict[int, str]] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.family != "no" or self.accepts == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["counterexample"] is not None:
            d["counterexample"] = {str(k): v for k, v in sorted(d["counterexample"].items())}
        else:
            d.pop("counterexample")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _family_of(s: Scheme, cfg: ConfigurationGraph, family: Optional[str]) -> str:
    if family is not None:
        return family
    from .oracles import classify
    return classify(s, cfg).family


# ------------------------------------------------------------------ fuzzing

def _random_label(rng: random.Random, max_bits: int) -> str:
    n = rng.randint(0, max_bits)
    return format(rng.getrandbits(n), "b").zfill(n) if n else ""


def _flip(rng: random.Random, bits: str) -> str:
    if not bits:
        return rng.choice("01")
    i = rng.randrange(len(bits))
    return bits[:i] + ("1" if bits[i] == "0" else "0") + bits[i + 1:]


def mutants(
    rng: random.Random,
    nodes: Sequence[int],
    templates: Sequence[Mapping[int, str]],
    max_bits: int,
) -> Iterable[Dict[int, str]]:
    """Endless stream of structured labelings derived from ``templates``."""
    shapes = ["flip", "flips", "swap", "splice", "resize", "copy", "const"]
    for t in templates:
        yield dict(t)
    while True:
        base = dict(rng.choice(templates))
        shape = rng.choice(shapes)
        if shape == "flip":
            v = rng.choice(nodes)
            base[v] = _flip(rng, base[v])
        elif shape == "flips":
            for _ in range(rng.randint(2, 4)):
                v = rng.choice(nodes)
                base[v] = _flip(rng, base[v])
        elif shape == "swap" and len(nodes) > 1:
            a, b = rng.sample(list(nodes), 2)
            base[a], base[b] = base[b], base[a]
        elif shape == "splice":
            for v in nodes:
                base[v] = rng.choice(templates)[v]
            v = rng.choice(nodes)
            base[v] = _flip(rng, base[v])
        elif shape == "resize":
            v = rng.choice(nodes)
            x = base[v]
            if x and rng.random() < 0.5:
                base[v] = x[:rng.randrange(len(x))]
            else:
                base[v] = x + _random_label(rng, 3)
        elif shape == "copy":
            src = rng.choice(nodes)
            for v in rng.sample(list(nodes), rng.randint(1, len(nodes))):
                base[v] = base[src]
        else:
            ch = rng.choice("01")
            base = {v: ch * len(base[v]) for v in nodes}
        yield base


def fuzz_soundness(
    s: Scheme,
    cfg: ConfigurationGraph,
    trials: int,
    max_bits: Optional[int] = None,
    seed: int = 0,
    family: Optional[str] = None,
    templates: Sequence[Mapping[int, str]] = (),
    structured: Optional[int] = None,
    instance: str = "",
) -> SoundnessReport:
    """``trials`` uniform random labelings plus ``structured`` mutants.

    Templates are honest-looking labelings (the scheme's unchecked prover
    output is added automatically); mutants are bit flips, swaps, splices
    and resizes of them.
    """
    fam = _family_of(s, cfg, family)
    report = SoundnessReport(s.name, instance or cfg.graph.name, fam, "fuzz")
    if fam == "yes":
        report.note = "misuse: yes-instance passed to a soundness attack"
        return report
    if fam == "gap":
        report.note = "unclassified, no assertion"
        return report
    nodes = cfg.graph.nodes
    pool: List[Mapping[int, str]] = [dict(t) for t in templates]
    if s.forger is not None:
        try:
            forged = s.forger(cfg)
        except (ProverRefusal, ValueError, KeyError, ArithmeticError):
            forged = None
        if forged is not None:
            pool.append(forged)
    pool.append({v: "" for v in nodes})
    if max_bits is None:
        max_bits = max([proof_size(t) for t in pool] + [1]) + 2
    rng = random.Random(seed)

    def attempt(labels: Dict[int, str]) -> bool:
        report.trials += 1
        if accepts(s, cfg, labels):
            report.accepts += 1
            if report.counterexample is None:
                report.counterexample = dict(labels)
            return True
        return False

    for _ in range(trials):
        attempt({v: _random_label(rng, max_bits) for v in nodes})
    extra = trials // 4 if structured is None else structured
    stream = mutants(rng, nodes, pool, max_bits)
    for labels in itertools.islice(stream, extra + len(pool)):
        attempt(labels)
    return report


# --------------------------------------------------------------- exhaustion

def all_strings(max_bits: int) -> List[str]:
    out = [""]
    for n in range(1, max_bits + 1):
        out += ["".join(p) for p in itertools.product("01", repeat=n)]
    return out


def exhaust_soundness(
    s: Scheme,
    cfg: ConfigurationGraph,
    max_bits: int,
    family: Optional[str] = None,
    instance: str = "",
    stop_at_first: bool = True,
) -> SoundnessReport:
    """Enumerate every labeling with labels of at most ``max_bits`` bits.

    Nodes are assigned in BFS order; a node is verified as soon as its
    closed neighbourhood is fully labeled, which prunes the search
    without skipping any assignment that could still be accepted.
    """
    g = cfg.graph
    if g.n * max_bits > EXHAUST_BUDGET:
        raise ValueError(f"exhaustive budget exceeded: n*max_bits = {g.n * max_bits}")
    fam = _family_of(s, cfg, family)
    report = SoundnessReport(s.name, instance or g.name, fam, "exhaust")
    order: List[int] = []
    seen = {g.nodes[0]}
    queue = deque([g.nodes[0]])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    pos = {v: i for i, v in enumerate(order)}
    ready: List[List[int]] = [[] for _ in order]
    for v in g.nodes:
        last = max([pos[v]] + [pos[u] for u in g.neighbors(v)])
        ready[last].append(v)
    cands = all_strings(max_bits)
    labels: Dict[int, str] = {}
    total = 1
    for _ in order:
        total *= len(cands)
    report.trials = total

    def rec(i: int) -> bool:
        if i == len(order):
            report.accepts += 1
            if report.counterexample is None:
                report.counterexample = dict(labels)
            return stop_at_first
        v = order[i]
        for lab in cands:
            labels[v] = lab
            if all(run_verifier(s, local_view(cfg, labels, x)) for x in ready[i]):
                if rec(i + 1):
                    return True
        del labels[v]
        return False

    rec(0)
    if fam == "gap":
        report.note = "unclassified, no assertion"
    elif fam == "yes":
        report.note = "yes-instance: accepting labelings expected"
    return report
