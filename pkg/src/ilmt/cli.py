"""``ilmt`` command line: generate, census, analyze, verify, embed, solve-cops.

Exit codes: 0 success, 1 usage or parse error, 2 size cap exceeded,
3 verification failures.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import _accel, fixtures
from .census import census3, census4, quasirandom_trace
from .cops import BudgetExceeded, cop_number, verify_strategy
from .embed import embed
from .generate import GeneratingSequence, iterate
from .props import analyze
from .tournament import (
    IlmtError,
    SizeCapError,
    Tournament,
    build_oriented,
    format_edgelist,
    max_nodes,
    read_edgelist,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, (list, tuple)):
        return [_rational(v) for v in x]
    if isinstance(x, dict):
        return {k: _rational(v) for k, v in x.items()}
    return x


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


# ---------------------------------------------------------------- config

def _base(args, oriented: bool = False):
    if args.file:
        return read_edgelist(args.file, oriented=oriented)
    g = fixtures.builtin(args.base)
    if oriented:
        return build_oriented(g.n, g.arcs())
    return g


def _sequence(args) -> GeneratingSequence:
    return GeneratingSequence.parse(args.seq, args.repeat)


def _steps(args, seq) -> int:
    steps = len(seq) if args.steps is None else args.steps
    if steps > len(seq):
        raise IlmtError(f"--steps {steps} exceeds the sequence length {len(seq)} (use --repeat)")
    return steps


def _cap(args) -> int:
    return args.max_nodes if args.max_nodes is not None else max_nodes()


def _graph(args, oriented: bool = False):
    seq = _sequence(args)
    steps = _steps(args, seq)
    g0 = _base(args, oriented)
    chain = list(iterate(g0, seq, steps, cap=_cap(args), oriented=oriented))
    return g0, seq, steps, chain


def _config(args) -> dict:
    skip = {"func", "threads", "report"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, payload: dict, timing=None) -> None:
    doc = {"command": args.command, "config": _config(args), "result": _rational(payload)}
    stamp = {"utc": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    if timing is not None:
        stamp["check_seconds"] = timing
    doc["timestamp"] = stamp
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


# ---------------------------------------------------------------- labels

def generation_labels(g0, chain) -> list[str]:
    """Clone labels: a base node cloned at step k gets k primes (a'' at step 2);
    the clone of an already primed node is written (a')'."""
    base = [chr(ord("a") + i) if g0.n <= 26 else str(i) for i in range(g0.n)]
    labels = list(base)
    for _, g, cm in chain[1:]:
        new = [f"({p})'" if "'" in p else p + "'" * cm.t for p in labels]
        labels = labels + new
    return labels


def _dot(g, labels) -> str:
    kind = "tournament" if isinstance(g, Tournament) else "oriented"
    lines = [f"digraph {kind} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{labels[v]}"];')
    for u, v in g.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def cmd_generate(args) -> int:
    g0, seq, steps, chain = _graph(args, oriented=args.oriented)
    g = chain[-1][1]
    if args.format == "edgelist":
        text = format_edgelist(g)
    elif args.format == "dot":
        text = _dot(g, generation_labels(g0, chain))
    else:
        text = json.dumps(
            {"n": g.n, "oriented": args.oriented, "sequence": str(seq)[:steps], "steps": steps,
             "arcs": [list(a) for a in g.arcs()], "labels": generation_labels(g0, chain)},
            sort_keys=True,
        ) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_census(args) -> int:
    if args.trace:
        seq = _sequence(args)
        steps = _steps(args, seq)
        tr = quasirandom_trace(_base(args), seq, steps)
        rows = [
            {"t": r.t, "n": r.n, "bit": r.bit, "a": r.a, "b": r.b, "counts4": r.counts4,
             "sigma": r.sigma, "d_star_T4": r.d_star_T4, "predicted_sigma": r.predicted_sigma}
            for r in tr.rows
        ]
        _emit(args, {"trace": rows, "requested": tr.requested, "reached": tr.reached, "truncated": tr.truncated})
        return EXIT_OK
    g = _graph(args)[3][-1][1]
    if args.k == 3:
        c = census3(g)
        out = {"n": g.n, "a": c.a, "b": c.b, "d3_proportion": c.d3_proportion}
    else:
        c = census4(g)
        out = {"n": g.n, **dict(zip(("T4", "Winner", "Loser", "Mixed"), c.counts)), "proportions": c.proportions}
    _emit(args, out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _graph(args)[3][-1][1]
    _emit(args, analyze(g, chi=args.chi, cop=args.cop).to_json())
    return EXIT_OK


def cmd_solve_cops(args) -> int:
    g = _graph(args)[3][-1][1]
    res = cop_number(g)
    ok, rounds = verify_strategy(res.game)
    _emit(args, {"n": g.n, **res.to_json(), "verified": ok, "capture_rounds": rounds})
    return EXIT_OK


def cmd_embed(args) -> int:
    g0 = _base(args)
    target = read_edgelist(args.target) if os.path.exists(args.target) else fixtures.builtin(args.target)
    e = embed(g0, _sequence(args), target, cap=_cap(args))
    _emit(args, e.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    _emit(args, report.to_json(timing=False), timing=[round(c.seconds, 6) for c in report.checks])
    for c in report.failures:
        print(f"FAIL [{c.anchor}] {c.claim} :: {c.instance} expected={c.expected} observed={c.observed}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAILED


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=None, help="worker threads (default: all cores)")
    common.add_argument("--report", default=None, help="also write the output to this path")
    common.add_argument("--max-nodes", type=_positive, default=None, help="node cap (default: ILMT_MAX_NODES or 131072)")

    graph = argparse.ArgumentParser(add_help=False)
    src = graph.add_mutually_exclusive_group()
    src.add_argument("--base", default="d3", help="builtin: d3, t3, edge, hero:i, fig2:G|H|T, linear:n")
    src.add_argument("--file", default=None, help="edge-list file for the base tournament")
    graph.add_argument("--seq", default="", help="generating sequence literal, e.g. 0101")
    graph.add_argument("--repeat", type=_positive, default=1, help="repeat the literal this many times")
    graph.add_argument("--steps", type=_nonneg, default=None, help="number of steps (default: sequence length)")

    p = _Parser(prog="ilmt", description="Iterated local model tournaments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common, graph], help="write G_t")
    g.add_argument("--format", choices=("edgelist", "json", "dot"), default="edgelist")
    g.add_argument("--oriented", action="store_true", help="oriented-graph variant")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", parents=[common, graph], help="3- or 4-node motif counts")
    c.add_argument("--k", type=int, choices=(3, 4), default=3)
    c.add_argument("--trace", action="store_true", help="per-step 4-type proportions and Markov prediction")
    c.set_defaults(func=cmd_census)

    a = sub.add_parser("analyze", parents=[common, graph], help="diameter, connectivity, domination")
    a.add_argument("--chi", action="store_true", help="exact chromatic number (exponential)")
    a.add_argument("--cop", action="store_true", help="exact cop number (exponential)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=tuple(SUITES))
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("embed", parents=[common, graph], help="embed a target tournament")
    e.add_argument("--target", required=True, help="builtin name or edge-list file")
    e.set_defaults(func=cmd_embed)

    s = sub.add_parser("solve-cops", parents=[common, graph], help="cop number with a winning strategy")
    s.set_defaults(func=cmd_solve_cops)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        _accel.set_threads(args.threads)
    try:
        return args.func(args)
    except (SizeCapError, BudgetExceeded) as exc:
        print(f"ilmt: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (IlmtError, ValueError, OSError) as exc:
        print(f"ilmt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
