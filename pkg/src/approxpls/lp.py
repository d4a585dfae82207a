"""Exact LP checks and the generic scheme-construction engines.

``make_primal_dual_apls`` turns a locally verifiable LP family plus a dual
generator into an APLS; ``make_vca_adpls`` pairs a certified approximation
with a comparison; the two ``reduce_*`` functions convert between the
output-certifying and the threshold-certifying flavours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .bits import DecodeError, pack, read_sint, sint, unpack
from .certify import comparison_check, comparison_labels
from .graph import ConfigurationGraph, Graph, LocalInput
from .gpls import LabelAssignment, LocalView, ProverRefusal, Scheme, local_view

Number = Fraction
Vector = Tuple[Fraction, ...]


class FittednessError(ProverRefusal):
    """The dual generator produced no (beta, gamma)-certificate."""


# ------------------------------------------------------------ standard form

@dataclass(frozen=True)
class StandardFormLP:
    """``min c.x s.t. Ax >= b, x >= 0`` or ``max c.x s.t. Ax <= b, x >= 0``."""

    sense: str
    A: Mapping[Tuple[int, int], Fraction]
    b: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]
    row_map: Tuple[int, ...]
    col_map: Tuple[Hashable, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.b), len(self.c)

    def Ax(self, x: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * len(self.b)
        for (i, j), a in self.A.items():
            out[i] += a * x[j]
        return out

    def ATy(self, y: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * len(self.c)
        for (i, j), a in self.A.items():
            out[j] += a * y[i]
        return out

    def primal_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((cj * xj for cj, xj in zip(self.c, x)), Fraction(0))

    def dual_value(self, y: Sequence[Fraction]) -> Fraction:
        return sum((bi * yi for bi, yi in zip(self.b, y)), Fraction(0))


def _dims(lp: StandardFormLP, x: Optional[Sequence] = None, y: Optional[Sequence] = None) -> None:
    k, l = lp.shape
    if x is not None and len(x) != l:
        raise ValueError(f"primal vector has {len(x)} entries, expected {l}")
    if y is not None and len(y) != k:
        raise ValueError(f"dual vector has {len(y)} entries, expected {k}")


def check_primal_feasible(lp: StandardFormLP, x: Sequence[Fraction]) -> bool:
    _dims(lp, x=x)
    if any(xj < 0 for xj in x):
        return False
    ax = lp.Ax(x)
    if lp.sense == "min":
        return all(a >= b for a, b in zip(ax, lp.b))
    return all(a <= b for a, b in zip(ax, lp.b))


def check_dual_feasible(lp: StandardFormLP, y: Sequence[Fraction]) -> bool:
    _dims(lp, y=y)
    if any(yi < 0 for yi in y):
        return False
    aty = lp.ATy(y)
    if lp.sense == "min":
        return all(a <= c for a, c in zip(aty, lp.c))
    return all(a >= c for a, c in zip(aty, lp.c))


def _primal_slack_ok(sense: str, cj: Fraction, aty: Fraction, beta: Fraction) -> bool:
    if sense == "min":
        return cj / beta <= aty <= cj
    return cj <= aty <= beta * cj


def _dual_slack_ok(sense: str, bi: Fraction, ax: Fraction, gamma: Fraction) -> bool:
    if sense == "min":
        return bi <= ax <= gamma * bi
    return bi / gamma <= ax <= bi


def check_relaxed_slackness(lp: StandardFormLP, x: Sequence[Fraction], y: Sequence[Fraction],
                            beta: Fraction, gamma: Fraction) -> bool:
    _dims(lp, x=x, y=y)
    aty = lp.ATy(y)
    ax = lp.Ax(x)
    for j, xj in enumerate(x):
        if xj > 0 and not _primal_slack_ok(lp.sense, lp.c[j], aty[j], beta):
            return False
    for i, yi in enumerate(y):
        if yi > 0 and not _dual_slack_ok(lp.sense, lp.b[i], ax[i], gamma):
            return False
    return True


# --------------------------------------------------------------- local slice

@dataclass
class LocalSlice:
    """The part of an LP a single node can evaluate.

    ``rows`` are the rows mapped to the node (coefficients over incident
    columns, right-hand side); ``cols`` are the incident columns (cost,
    coefficients over rows of the node and its neighbours).
    """

    sense: str
    rows: Dict[Hashable, Tuple[Dict[Hashable, Fraction], Fraction]]
    cols: Dict[Hashable, Tuple[Fraction, Dict[Hashable, Fraction]]]
    y: Dict[Hashable, Fraction]
    x: Optional[Dict[Hashable, Fraction]] = None


def check_local_dual(sl: LocalSlice) -> bool:
    if any(v < 0 for v in sl.y.values()):
        return False
    for cj, coeffs in sl.cols.values():
        aty = sum((a * sl.y[r] for r, a in coeffs.items()), Fraction(0))
        if sl.sense == "min" and aty > cj:
            return False
        if sl.sense == "max" and aty < cj:
            return False
    return True


def check_local_slice(sl: LocalSlice, beta: Fraction, gamma: Fraction) -> bool:
    """Primal feasibility, dual feasibility and both slackness relaxations."""
    assert sl.x is not None
    if any(v < 0 for v in sl.x.values()) or not check_local_dual(sl):
        return False
    for key, (coeffs, bi) in sl.rows.items():
        ax = sum((a * sl.x[j] for j, a in coeffs.items()), Fraction(0))
        if sl.sense == "min" and ax < bi:
            return False
        if sl.sense == "max" and ax > bi:
            return False
        if sl.y[key] > 0 and not _dual_slack_ok(sl.sense, bi, ax, gamma):
            return False
    for j, (cj, coeffs) in sl.cols.items():
        if sl.x[j] > 0:
            aty = sum((a * sl.y[r] for r, a in coeffs.items()), Fraction(0))
            if not _primal_slack_ok(sl.sense, cj, aty, beta):
                return False
    return True


# --------------------------------------------------------- primal-dual engine

@dataclass(frozen=True)
class DualCodec:
    """Fixed-width numerators over a common denominator, one per own row."""

    width: int
    denominator: int
    max_numerator: int
    rows: int = 1

    def encode(self, y: Vector) -> str:
        out = []
        for v in y:
            a = v * self.denominator
            if a.denominator != 1 or not 0 <= a <= self.max_numerator:
                raise ValueError(f"dual value {v} not representable")
            out.append(format(int(a), "b").zfill(self.width))
        return "".join(out)

    def decode(self, bits: str) -> Vector:
        if len(bits) != self.width * self.rows:
            raise DecodeError("dual label has wrong length")
        vals = []
        for i in range(self.rows):
            a = int(bits[i * self.width:(i + 1) * self.width], 2)
            if a > self.max_numerator:
                raise DecodeError("dual numerator out of range")
            vals.append(Fraction(a, self.denominator))
        return tuple(vals)


@dataclass(frozen=True)
class LPFamily:
    """A locally verifiable LP attached to one optimisation problem."""

    sense: str
    build: Callable[[Graph], StandardFormLP]
    primal: Callable[[ConfigurationGraph], List[Fraction]]
    local: Callable[[LocalInput, Optional[str], Vector, Sequence[Vector]], LocalSlice]
    rhs: Callable[[LocalInput], Vector]
    optimum: Callable[[Graph], Dict[int, str]]


@dataclass(frozen=True)
class PrimalDualParts:
    family: LPFamily
    codec: DualCodec
    dual_generator: Callable[[ConfigurationGraph], Dict[int, Vector]]
    beta: Fraction
    gamma: Fraction


def dual_vector(lp: StandardFormLP, y: Mapping[int, Vector]) -> List[Fraction]:
    seen: Dict[int, int] = {}
    out = []
    for u in lp.row_map:
        i = seen.get(u, 0)
        out.append(y[u][i])
        seen[u] = i + 1
    return out


def make_primal_dual_apls(
    name: str,
    problem: str,
    family: LPFamily,
    dual_generator: Callable[[ConfigurationGraph], Dict[int, Vector]],
    codec: DualCodec,
    beta: Fraction,
    gamma: Fraction,
    universe: Callable[[ConfigurationGraph], bool],
    kind: str = "APLS",
    params: Optional[Mapping[str, object]] = None,
) -> Scheme:
    parts = PrimalDualParts(family, codec, dual_generator, Fraction(beta), Fraction(gamma))

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        y = dual_generator(cfg)
        if strict:
            lp = family.build(cfg.graph)
            x = family.primal(cfg)
            yv = dual_vector(lp, y)
            if not (check_primal_feasible(lp, x) and check_dual_feasible(lp, yv)
                    and check_relaxed_slackness(lp, x, yv, parts.beta, parts.gamma)):
                raise FittednessError(f"{name}: dual generator gave no valid certificate")
        return {v: codec.encode(y[v]) for v in cfg.graph.nodes}

    def verifier(view: LocalView) -> bool:
        y_self = codec.decode(view.label)
        y_nbr = [codec.decode(x) for x in view.nbr]
        sl = family.local(view.inp, view.out, y_self, y_nbr)
        return check_local_slice(sl, parts.beta, parts.gamma)

    p = dict(params or {})
    p.update(beta=parts.beta, gamma=parts.gamma, pd=parts)
    return Scheme(
        name=name, kind=kind, problem=problem, alpha=parts.beta * parts.gamma,
        universe=universe, prover=prover, verifier=verifier,
        forger=lambda cfg: prover(cfg, strict=False), params=p,
    )


# ---------------------------------------------------------------- VCA engine

def _split(view: LocalView, count: int) -> Tuple[List[str], List[List[str]]]:
    own = unpack(view.label, count)
    nbr = [unpack(x, count) for x in view.nbr]
    return own, nbr


def make_vca_adpls(
    name: str,
    problem: str,
    universe: Callable[[ConfigurationGraph], bool],
    approx_prover: Callable[[ConfigurationGraph], LabelAssignment],
    approx_verifier: Callable[[LocalView], bool],
    lam: Callable[[LocalView], int],
    threshold: Callable[[LocalView], int],
    alpha: Fraction | float,
    sense: str,
    k: int,
    kind: str = "ADPLS",
    params: Optional[Mapping[str, object]] = None,
) -> Scheme:
    """Labels are ``<L_approx, L_comp>``.

    ``lam`` and ``threshold`` return integers on a common scale fixed by
    the scheme; in max sense the comparison runs on ``-lam`` and
    ``-threshold``.
    """
    sign = 1 if sense == "min" else -1

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        approx = approx_prover(cfg)
        views = {v: local_view(cfg, approx, v) for v in g.nodes}
        h = {v: sign * lam(views[v]) for v in g.nodes}
        K = sign * threshold(views[min(g.nodes)])
        comp = comparison_labels(g, h, K, strict=strict)
        return {v: pack([approx[v], comp[v]]) for v in g.nodes}

    def verifier(view: LocalView) -> bool:
        own, nbr = _split(view, 2)
        inner = LocalView(view.inp, view.out, own[0], tuple(x[0] for x in nbr))
        if not approx_verifier(inner):
            return False
        hv = sign * lam(inner)
        K = sign * threshold(inner)
        return comparison_check(view.inp.id, view.inp.id_bits, hv, K, own[1], [x[1] for x in nbr])

    def parts(inp: LocalInput, label: str) -> Dict[str, str]:
        a, c = unpack(label, 2)
        return {"approx": a, "comparison": c}

    p = dict(params or {})
    p.update(k=k, sense=sense, lam=lam)
    return Scheme(
        name=name, kind=kind, problem=problem, alpha=alpha, universe=universe,
        prover=prover, verifier=verifier, forger=lambda cfg: prover(cfg, strict=False),
        params=p, parts=parts,
    )


# ---------------------------------------------------------------- reductions

def reduce_apls_to_adpls(pd_apls: Scheme, k: int, name: str,
                         universe: Callable[[ConfigurationGraph], bool],
                         kind: str = "ADPLS") -> Scheme:
    """Certify ``OPT`` against ``k`` with the dual of a primal-dual APLS.

    The approximation label is ``y(u)``; ``lambda(u)`` is ``alpha * b.y(u)``
    (min) or ``b.y(u) / alpha`` (max), scaled to an integer.
    """
    parts: PrimalDualParts = pd_apls.params["pd"]  # type: ignore[assignment]
    fam, codec = parts.family, parts.codec
    alpha = parts.beta * parts.gamma
    sense = fam.sense
    factor = alpha if sense == "min" else 1 / alpha
    scale = (factor / codec.denominator).denominator

    def lam_of(inp: LocalInput, y: Vector) -> int:
        val = scale * factor * sum((bi * yi for bi, yi in zip(fam.rhs(inp), y)), Fraction(0))
        if val.denominator != 1:
            raise DecodeError("decomposition value is not on the integer grid")
        return int(val)

    def approx_prover(cfg: ConfigurationGraph) -> LabelAssignment:
        g = cfg.graph
        opt_cfg = ConfigurationGraph(g, fam.optimum(g))
        y = parts.dual_generator(opt_cfg)
        return {v: codec.encode(y[v]) for v in g.nodes}

    def approx_verifier(view: LocalView) -> bool:
        y_self = codec.decode(view.label)
        y_nbr = [codec.decode(x) for x in view.nbr]
        return check_local_dual(fam.local(view.inp, None, y_self, y_nbr))

    return make_vca_adpls(
        name=name,
        problem=pd_apls.problem or "",
        universe=universe,
        approx_prover=approx_prover,
        approx_verifier=approx_verifier,
        lam=lambda view: lam_of(view.inp, codec.decode(view.label)),
        threshold=lambda view: scale * k,
        alpha=alpha, sense=sense, k=k, kind=kind,
        params={"scale": scale, "source": pd_apls.name},
    )


def reduce_adpls_to_apls(
    name: str,
    problem: str,
    feas: Scheme,
    adpls_factory: Callable[[int], Scheme],
    f_local: Callable[[LocalInput, str], int],
    scale: int,
    alpha: Fraction | float,
    sense: str,
    universe: Callable[[ConfigurationGraph], bool],
    objective: Callable[[ConfigurationGraph], int],
    kind: str = "APLS",
) -> Scheme:
    """Labels ``<L_feas, L_obj, L_cmp_ge, L_cmp_le, L_inner>``.

    ``f_local`` is the per-node share of ``scale * f``; the two comparisons
    pin ``sum f_local`` to ``scale * L_obj`` from both sides and the inner
    threshold scheme is run at ``k = L_obj`` on the output-free view.
    """

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        lf = feas.prover(cfg) if strict else (feas.forger or feas.prover)(cfg)
        f = objective(cfg)
        h = {v: f_local(*cfg.state(v)) for v in g.nodes}
        ge = comparison_labels(g, h, scale * f, strict=strict)
        le = comparison_labels(g, {v: -h[v] for v in g.nodes}, -scale * f, strict=strict)
        inner_s = adpls_factory(f)
        inner_cfg = ConfigurationGraph(g)
        inner = inner_s.prover(inner_cfg) if strict else (inner_s.forger or inner_s.prover)(inner_cfg)
        return {v: pack([lf[v], sint(f), ge[v], le[v], inner[v]]) for v in g.nodes}

    def verifier(view: LocalView) -> bool:
        own, nbr = _split(view, 5)
        fview = LocalView(view.inp, view.out, own[0], tuple(x[0] for x in nbr))
        if not feas.verifier(fview):
            return False
        f = read_sint(own[1])
        if any(read_sint(x[1]) != f for x in nbr):
            return False
        hv = f_local(view.inp, view.out)
        vid, idw = view.inp.id, view.inp.id_bits
        if not comparison_check(vid, idw, hv, scale * f, own[2], [x[2] for x in nbr]):
            return False
        if not comparison_check(vid, idw, -hv, -scale * f, own[3], [x[3] for x in nbr]):
            return False
        inner_s = adpls_factory(f)
        iview = LocalView(view.inp, "", own[4], tuple(x[4] for x in nbr))
        return bool(inner_s.verifier(iview))

    def parts(inp: LocalInput, label: str) -> Dict[str, str]:
        a, b, c, d, e = unpack(label, 5)
        return {"feas": a, "obj": b, "comparison_ge": c, "comparison_le": d, "inner": e}

    return Scheme(
        name=name, kind=kind, problem=problem, alpha=alpha, universe=universe,
        prover=prover, verifier=verifier, forger=lambda cfg: prover(cfg, strict=False),
        params={"sense": sense, "scale": scale, "inner": adpls_factory, "f_local": f_local},
        parts=parts,
    )
