"""Command-line front end.

Per-graph commands (``lambda``, ``minor``) read graph6 lines from stdin and
stream one JSON object per line.  Report commands print a single JSON
object.  ``--csv`` switches any command to CSV.

Exit status: 0 on success, 1 when a checked invariant fails, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import Iterable, Iterator

from .constructions import (
    PatternSpec,
    catalog_spec,
    complete,
    pattern_graph,
    split_graph,
    split_matching_graph,
)
from .extremal import (
    BOUND_NAMES,
    enumerate_labeled,
    search_extremal,
    verify_edge_bounds,
)
from .graph import Graph, GraphError, read_graph6_stream, to_graph6
from .harness import HARNESSES
from .minor import BudgetExceeded, DEFAULT_BUDGET, find_minor
from .spectral import (
    ConvergenceError,
    EXACT_MAX_N,
    exact_spectral_radius,
    lambda_F_even,
    lambda_F_odd,
    lambda_S_closed,
    spectral_radius,
)

FORMULA_TOL = 1e-8


class UsageError(Exception):
    pass


class InvariantFailure(Exception):
    pass


# pattern grammar ------------------------------------------------------------

_EDGE_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pattern(text: str, r: int | None = None) -> PatternSpec:
    """Parse ``Kr-``, ``Kr=``, ``Kr``, ``K5-``, ``paths:2,2,3``,
    ``edges:(0,1),(1,2)`` or a catalogue name ``F1``..``F19``."""
    s = text.strip()
    m = re.fullmatch(r"[Kk](r|\d+)([-=]?)", s)
    if m:
        order = r if m.group(1) == "r" else int(m.group(1))
        if order is None:
            raise UsageError(f"pattern {text!r} needs --r")
        if r is not None and m.group(1) != "r" and order != r:
            raise UsageError(f"pattern {text!r} conflicts with --r {r}")
        kind = m.group(2)
        if kind == "-":
            return PatternSpec.kr_minus(order)
        if kind == "=":
            return PatternSpec.kr_double_minus(order)
        return PatternSpec.clique(order)
    if re.fullmatch(r"[Ff]\d+", s):
        return catalog_spec(s)
    if s.startswith("paths:"):
        if r is None:
            raise UsageError("paths patterns need --r")
        try:
            ks = [int(k) for k in s[len("paths:"):].split(",") if k.strip()]
        except ValueError:
            raise UsageError(f"bad path orders in {text!r}") from None
        return PatternSpec.path_family(r, ks)
    if s.startswith("edges:"):
        if r is None:
            raise UsageError("edges patterns need --r")
        body = s[len("edges:"):]
        pairs = _EDGE_RE.findall(body)
        if _EDGE_RE.sub("", body).replace(",", "").strip():
            raise UsageError(f"bad edge list in {text!r}")
        return PatternSpec.explicit(r, [(int(i), int(j)) for i, j in pairs])
    raise UsageError(f"unrecognised pattern {text!r}")


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"expected A..B, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return range(a, b + 1)


# output ---------------------------------------------------------------------


def _flat(v):
    if isinstance(v, (list, tuple)):
        return ";".join(json.dumps(x) if isinstance(x, (list, dict)) else str(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return ""
    return v


class Emitter:
    """Writes rows as JSON lines or CSV, flushing per row."""

    def __init__(self, out, as_csv: bool):
        self.out = out
        self.as_csv = as_csv
        self.writer = None

    def row(self, obj: dict) -> None:
        if self.as_csv:
            if self.writer is None:
                self.writer = csv.DictWriter(self.out, fieldnames=list(obj), lineterminator="\n")
                self.writer.writeheader()
            self.writer.writerow({k: _flat(v) for k, v in obj.items()})
        else:
            self.out.write(json.dumps(obj) + "\n")
        self.out.flush()


def _graphs(stream) -> Iterator[Graph]:
    try:
        yield from read_graph6_stream(stream)
    except GraphError as exc:
        raise UsageError(f"bad graph6 input: {exc}") from None


# commands -------------------------------------------------------------------


def cmd_construct(args, out) -> int:
    fam = args.family
    if fam in ("S", "F"):
        if args.n is None or args.r is None:
            raise UsageError(f"family {fam} needs --n and --r")
        build = split_graph if fam == "S" else split_matching_graph
        g = build(args.n, args.r - 3)
    elif fam == "pattern":
        if args.r is None or (args.paths is None) == (args.edges is None):
            raise UsageError("family pattern needs --r and exactly one of --paths, --edges")
        text = f"paths:{args.paths}" if args.paths is not None else f"edges:{args.edges}"
        g = pattern_graph(parse_pattern(text, args.r))
    elif fam == "K":
        if args.r is None:
            raise UsageError("family K needs --r")
        g = complete(args.r)
    else:
        g = pattern_graph(parse_pattern(fam, args.r))
    out.write(to_graph6(g) + "\n")
    return 0


def cmd_lambda(args, out) -> int:
    em = Emitter(out, args.csv)
    status = 0
    for g in _graphs(sys.stdin):
        row: dict = {"graph6": to_graph6(g), "n": g.n}
        try:
            res = spectral_radius(g, tol=args.tol)
        except ConvergenceError as exc:
            res = exc.result
            status = 1
        row["lambda"] = res.lam
        row["residual"] = res.residual
        row["iterations"] = res.iterations
        if args.exact:
            row["exact"] = exact_spectral_radius(g) if g.n <= EXACT_MAX_N else None
        em.row(row)
    return status


def cmd_minor(args, out) -> int:
    spec = parse_pattern(args.pattern, args.r)
    h = pattern_graph(spec)
    em = Emitter(out, args.csv)
    for g in _graphs(sys.stdin):
        try:
            model = find_minor(g, h, args.budget)
        except BudgetExceeded as exc:
            raise InvariantFailure(f"{exc} on graph {to_graph6(g)}") from None
        row = {"graph6": to_graph6(g), "pattern": spec.label(), "has_minor": model is not None}
        if args.witness:
            row["witness"] = model.to_json()["branch_sets"] if model else None
        em.row(row)
    return 0


def _corpus(args) -> Iterable[Graph]:
    if (args.n is None) == (not args.stdin):
        raise UsageError("give exactly one of --n or --stdin")
    if args.stdin:
        return _graphs(sys.stdin)
    return enumerate_labeled(args.n, dedup=args.classes)


def cmd_search(args, out) -> int:
    spec = parse_pattern(args.pattern, args.r)
    try:
        rep = search_extremal(_corpus(args), spec, args.connected, args.budget, args.workers)
    except BudgetExceeded as exc:
        raise InvariantFailure(str(exc)) from None
    Emitter(out, args.csv).row(rep.to_json())
    return 0


def cmd_bounds(args, out) -> int:
    try:
        rep = verify_edge_bounds(_corpus(args), args.r, args.bound, args.budget, args.workers)
    except BudgetExceeded as exc:
        raise InvariantFailure(str(exc)) from None
    Emitter(out, args.csv).row(rep.to_json())
    return 1 if rep.violations else 0


def cmd_harness(args, out) -> int:
    rep = HARNESSES[args.name](args.trials, args.r, args.n, args.seed)
    Emitter(out, args.csv).row(rep.to_json())
    return 0 if rep.passed else 1


def formula_rows(r: int, ns: Iterable[int]) -> list[dict]:
    """Closed forms (corrected and as printed) against power iteration."""
    rows = []
    t = r - 3
    for n in ns:
        if n <= t:
            continue
        lam_s = spectral_radius(split_graph(n, t)).lam
        closed = lambda_S_closed(n, r)
        rows.append(_formula_row(n, r, "S", closed, closed, lam_s))
        lam_f = spectral_radius(split_matching_graph(n, t)).lam
        if (n - t) % 2 == 0:
            rows.append(_formula_row(n, r, "F-even", lambda_F_even(n, r), lambda_F_even(n, r, strict=True), lam_f))
        else:
            rows.append(_formula_row(n, r, "F-odd", lambda_F_odd(n, r), lambda_F_odd(n, r, strict=True), lam_f))
    return rows


def _formula_row(n, r, family, closed, printed, power) -> dict:
    dev = abs(closed - power)
    printed_dev = abs(printed - power) if printed == printed else None
    return {
        "n": n,
        "r": r,
        "family": family,
        "closed_form": closed,
        "printed_form": printed if printed == printed else None,
        "power_iteration": power,
        "deviation": dev,
        "printed_deviation": printed_dev,
        "agrees": dev <= FORMULA_TOL,
    }


def cmd_formulas(args, out) -> int:
    if args.r < 4:
        raise UsageError("formulas need --r >= 4")
    rows = formula_rows(args.r, parse_range(args.n_range))
    em = Emitter(out, args.csv)
    for row in rows:
        em.row(row)
    return 0 if all(row["agrees"] for row in rows) else 1


# parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minorfree", description="Minor-free extremal graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, csv_flag=True):
        if csv_flag:
            sp.add_argument("--csv", action="store_true", help="CSV instead of JSON")
        return sp

    c = common(sub.add_parser("construct", help="print a named graph as graph6"), csv_flag=False)
    c.add_argument("--family", required=True, help="S, F, K, Kr-, Kr=, F1..F19 or pattern")
    c.add_argument("--n", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--paths", help="comma-separated path orders, e.g. 2,2,3")
    c.add_argument("--edges", help="explicit deleted edges, e.g. (0,1),(1,2)")

    c = common(sub.add_parser("lambda", help="spectral radius of graph6 lines on stdin"))
    c.add_argument("--exact", action="store_true", help="also isolate the root of the characteristic polynomial")
    c.add_argument("--tol", type=float, default=1e-10)

    c = common(sub.add_parser("minor", help="pattern-minor test for graph6 lines on stdin"))
    c.add_argument("--pattern", required=True)
    c.add_argument("--r", type=int)
    c.add_argument("--witness", action="store_true")
    c.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    for name, helptext in (("search", "maximise lambda over a minor-free family"),
                           ("bounds", "check an extremal edge bound")):
        c = common(sub.add_parser(name, help=helptext))
        if name == "search":
            c.add_argument("--pattern", required=True)
            c.add_argument("--r", type=int)
            c.add_argument("--connected", action="store_true")
        else:
            c.add_argument("--bound", required=True, choices=BOUND_NAMES)
            c.add_argument("--r", type=int, required=True)
        c.add_argument("--n", type=int, help="scan all labelled graphs on n vertices")
        c.add_argument("--classes", action="store_true", help="with --n, one graph per isomorphism class")
        c.add_argument("--stdin", action="store_true", help="read graph6 lines from stdin")
        c.add_argument("--workers", type=_positive, default=1)
        c.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    c = common(sub.add_parser("harness", help="seeded structural property harness"))
    c.add_argument("--name", required=True, choices=sorted(HARNESSES))
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--trials", type=_positive, default=500)
    c.add_argument("--seed", type=int, default=0)

    c = common(sub.add_parser("formulas", help="closed-form spectral radii against power iteration"))
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--n-range", required=True, help="A..B")
    return p


COMMANDS = {
    "construct": cmd_construct,
    "lambda": cmd_lambda,
    "minor": cmd_minor,
    "search": cmd_search,
    "bounds": cmd_bounds,
    "harness": cmd_harness,
    "formulas": cmd_formulas,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"minorfree: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError) as exc:
        print(f"minorfree: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantFailure, AssertionError, ArithmeticError) as exc:
        print(f"minorfree: invariant failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
