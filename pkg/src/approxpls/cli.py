"""``approxpls`` command line."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import generators as gen
from .graph import ConfigurationGraph, GraphError, parse_assignment, parse_graph, serialize_assignment, serialize_graph
from .gpls import (ProverRefusal, Scheme, UniverseError, exhaust_soundness, fuzz_soundness, prove,
                   proof_size, verify)
from .oracles import OracleBudgetError, classify, opt_value
from .problems import Kind
from .registry import ENTRIES, UnknownScheme, build_scheme
from .suite import SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _scheme(args) -> Scheme:
    try:
        s = build_scheme(args.scheme, kappa=args.kappa, k=args.k)
    except UnknownScheme:
        raise UsageError(f"unknown scheme {args.scheme!r}; known: {', '.join(ENTRIES)}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if getattr(args, "alpha", None) is not None:
        try:
            alpha = Fraction(args.alpha)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad --alpha {args.alpha!r}") from None
        n_alpha = s.params.get("alpha_fn")
        if n_alpha is None and alpha < Fraction(s.alpha):
            raise UsageError(f"--alpha {alpha} is below the scheme ratio {s.alpha}")
        params = {key: val for key, val in s.params.items() if key != "alpha_fn"}
        s = replace(s, alpha=alpha, params=params)
    return s


def _config(args) -> ConfigurationGraph:
    where = args.graph
    try:
        g = parse_graph(Path(args.graph).read_text())
        where = args.output
        out = parse_assignment(Path(args.output).read_text()) if args.output else {}
        return ConfigurationGraph(g, out)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except GraphError as exc:
        raise UsageError(f"{where}: {exc}") from None


def _forged(s: Scheme, cfg: ConfigurationGraph):
    """Best-effort labels for a configuration the honest prover refuses."""
    try:
        labels = s.forger(cfg) if s.forger else None
    except ProverRefusal:
        labels = None
    return labels if labels is not None else {v: "" for v in cfg.graph.nodes}


# ---------------------------------------------------------------- commands

def cmd_gen(args) -> int:
    try:
        g = gen.generate(args.family, args.n, seed=args.seed, p=args.p, kappa=args.kappa or 1,
                         W=args.W, terminals=args.terminals)
    except gen.GenerationError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.solve:
        try:
            value, witness = opt_value(Kind(args.solve), g)
        except (ValueError, OracleBudgetError) as exc:
            raise UsageError(str(exc)) from None
        if witness is not None:
            target = Path(args.solve_out or (str(args.out) + ".out" if args.out else "solution.out"))
            target.write_text(serialize_assignment(witness))
        print(_dump({"graph": g.name, "problem": args.solve, "opt": value}), file=sys.stderr)
    return EXIT_OK


def cmd_run(args) -> int:
    s = _scheme(args)
    cfg = _config(args)
    t0 = time.time()
    try:
        family: Optional[str] = classify(s, cfg).family
    except OracleBudgetError:
        family = None
    except UniverseError as exc:
        raise UsageError(str(exc)) from None
    refused = None
    if args.labels:
        try:
            labels = parse_assignment(Path(args.labels).read_text())
        except (OSError, GraphError) as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            labels = prove(s, cfg)
        except ProverRefusal as exc:
            refused = str(exc)
            labels = _forged(s, cfg)
    try:
        verdict = verify(s, cfg, labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {
        "scheme": s.name, "graph": cfg.graph.name, "family": family,
        "accept": verdict.accept, "phi": {str(v): ok for v, ok in sorted(verdict.phi.items())},
        "rejecting": verdict.rejecting(), "proof_size": proof_size(labels),
        "prover_refused": refused,
    }
    if args.timing:
        report["seconds"] = round(time.time() - t0, 3)
    print(_dump(report))
    if args.save_labels:
        Path(args.save_labels).write_text(serialize_assignment(labels))
    return EXIT_OK if verdict.accept else EXIT_FAIL


def cmd_fuzz(args) -> int:
    s = _scheme(args)
    cfg = _config(args)
    try:
        family = classify(s, cfg).family
    except OracleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UniverseError as exc:
        raise UsageError(str(exc)) from None
    if family == "gap":
        print("gap: informational", file=sys.stderr)
    elif family == "yes":
        print("warning: fuzzing a yes-instance; accepting labelings are expected", file=sys.stderr)
    t0 = time.time()
    if args.exhaustive:
        if args.max_bits is None:
            raise UsageError("--exhaustive needs --max-bits")
        try:
            rep = exhaust_soundness(s, cfg, args.max_bits, family=family, instance=cfg.graph.name)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        rep = fuzz_soundness(s, cfg, args.trials, max_bits=args.max_bits, seed=args.seed,
                             family=family, instance=cfg.graph.name)
    out = rep.to_dict()
    if args.timing:
        out["seconds"] = round(time.time() - t0, 3)
    print(_dump(out))
    return EXIT_FAIL if family == "no" and rep.accepts else EXIT_OK


def cmd_suite(args) -> int:
    cfg = SuiteConfig(seed=args.seed, filter=args.filter, corrupt=tuple(args.corrupt or ()))
    if args.trials is not None:
        cfg.fuzz_trials = args.trials
    if args.quick:
        cfg.fuzz_trials = min(cfg.fuzz_trials, 500)
        cfg.sandwich, cfg.lemma_graphs = 40, 40
    report = run_suite(cfg)
    for c in report.criteria:
        print(c.line(), file=sys.stderr)
    text = report.to_json(timing=args.timing)
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------------ parser

def _scheme_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("scheme")
    p.add_argument("graph")
    p.add_argument("output", nargs="?", help="output assignment file (out <id> <hex>)")
    p.add_argument("--kappa", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha", help="classification ratio, e.g. 2 or 3/2")
    p.add_argument("--timing", action="store_true", help="include wall-clock fields")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="approxpls", description="Approximate proof-labeling schemes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("family", choices=gen.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--kappa", type=int)
    p.add_argument("--W", type=int)
    p.add_argument("--terminals", type=int, default=0)
    p.add_argument("--out", "-o")
    p.add_argument("--solve", choices=[k.value for k in Kind if k is not Kind.LEADER],
                   help="also write an oracle-optimal output for this problem")
    p.add_argument("--solve-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="prove and verify one configuration")
    _scheme_flags(p)
    p.add_argument("--labels", help="verify these labels instead of proving")
    p.add_argument("--save-labels")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fuzz", help="adversarial labelings against one configuration")
    _scheme_flags(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-bits", type=int)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("suite", help="run the acceptance matrix")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--filter")
    p.add_argument("--trials", type=int)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--quick", action="store_true", help="smaller sample sizes")
    p.add_argument("--timing", action="store_true", help="include wall-clock fields")
    p.add_argument("--corrupt", action="append", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
