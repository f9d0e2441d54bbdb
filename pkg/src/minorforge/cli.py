"""Command-line front end.

Every successful invocation prints exactly one JSON document on stdout;
diagnostics (and the optional ``--pretty`` tables) go to stderr.

Exit codes: 0 success, 1 usage error, 2 unreadable graph input,
3 anomaly (a theorem or certificate check failed, which means a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .certificate import validate_certificate
from .errors import GraphError, ParseError, Undefined
from .graph import Graph, bits, format_edge_list, from_graph6, looks_like_graph6, parse_edge_list, to_graph6
from .invariants import compute_bundle, hadwiger_number, max_independent_set
from .minors import dm_clique_minor
from .sweep import CorpusSource, SweepFilter, run_sweep
from .theorems import THEOREMS, check, recognize_lemma1, recognize_lemma2

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_ANOMALY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for parse errors here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- graph input ----------------------------------------------------------------------

def _parse_text(text: str, fmt: str, where: str) -> Graph:
    if fmt == "auto":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        fmt = "g6" if len(lines) == 1 and looks_like_graph6(lines[0].removeprefix(">>graph6<<")) else "edges"
    if fmt == "g6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"{where}: expected exactly one graph6 line, found {len(lines)}")
        return from_graph6(lines[0])
    return parse_edge_list(text)


def read_graph(arg: str, fmt: str = "auto", stdin=None) -> Graph:
    """Resolve a graph argument: graph6 token, ``-`` for stdin, or a file path."""
    if arg == "-":
        stream = stdin if stdin is not None else sys.stdin
        return _parse_text(stream.read(), fmt, "<stdin>")
    if fmt == "auto" and looks_like_graph6(arg):
        return from_graph6(arg)
    if os.path.isfile(arg):
        with open(arg, encoding="ascii", errors="replace") as fh:
            text = fh.read()
        if fmt == "auto":
            ext = os.path.splitext(arg)[1].lower()
            if ext == ".g6":
                fmt = "g6"
            elif ext in (".edges", ".edgelist", ".el"):
                fmt = "edges"
        return _parse_text(text, fmt, arg)
    if fmt == "edges":
        raise UsageError(f"no such file: {arg}")
    if fmt == "g6" or (arg and all(63 <= ord(c) <= 126 for c in arg)):
        # looks like an attempt at graph6; report why it does not decode
        return from_graph6(arg)
    raise UsageError(f"{arg!r} is neither a graph6 string nor a readable file")


# -- output ---------------------------------------------------------------------------

def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=1))
    out.write("\n")


def _table(rows: list[tuple], err) -> None:
    if not rows:
        return
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        err.write("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _theorem_ids(values: list[str] | None) -> tuple[str, ...]:
    if not values:
        return THEOREMS
    picked = []
    for value in values:
        for item in value.split(","):
            item = item.strip().upper()
            if not item:
                continue
            if item == "ALL":
                return THEOREMS
            if item not in THEOREMS:
                raise UsageError(f"unknown theorem {item!r}; choose from {', '.join(THEOREMS)} or all")
            if item not in picked:
                picked.append(item)
    return tuple(t for t in THEOREMS if t in picked)


def _default_workers() -> int:
    raw = os.environ.get("MINORFORGE_WORKERS")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"MINORFORGE_WORKERS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("MINORFORGE_WORKERS must be at least 1")
    return value


# -- subcommands ------------------------------------------------------------------------

def cmd_invariants(args, out, err) -> int:
    g = read_graph(args.graph, args.format)
    b = compute_bundle(g, want_chi=args.chi)
    doc = {"g6": to_graph6(g), **b.to_dict()}
    _emit(doc, out)
    if args.pretty:
        _table([("field", "value")] + [(k, v) for k, v in doc.items()
                                       if not isinstance(v, (list, dict))], err)
    return EXIT_OK


def cmd_minor(args, out, err) -> int:
    g = read_graph(args.graph, args.format)
    if g.n == 0:
        raise Undefined("the empty graph has no clique minor")
    cert = dm_clique_minor(g)
    verdict = validate_certificate(g, cert)
    alpha, _ = max_independent_set(g)
    lower = -(-g.n // (2 * alpha - 1))
    doc = {
        "g6": to_graph6(g),
        "certificate": cert.to_dict(),
        "verdict": verdict.to_dict(),
        "alpha": alpha,
        "lower_bound": lower,
    }
    ok = verdict.ok and cert.order >= lower
    if args.exact:
        h, hcert = hadwiger_number(g)
        doc["h"] = h
        doc["h_certificate"] = hcert.to_dict()
        ok = ok and cert.order <= h and validate_certificate(g, hcert).ok
    _emit(doc, out)
    if args.pretty:
        rows = [("set", "vertices")] + [(i, bits(s)) for i, s in enumerate(cert.branch_sets)]
        _table(rows, err)
        err.write(f"order {cert.order} (lower bound {lower})" + (f", exact h {doc['h']}" if args.exact else "") + "\n")
    if not ok:
        err.write("anomaly: the constructed certificate failed its checks\n")
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_check(args, out, err) -> int:
    g = read_graph(args.graph, args.format)
    ids = _theorem_ids(args.theorem)
    b = compute_bundle(g)
    reports = [check(t, b, g) for t in ids]
    _emit({"g6": to_graph6(g), "reports": [r.to_dict() for r in reports]}, out)
    if args.pretty:
        rows = [("theorem", "applicable", "lhs", "rhs", "holds", "equality", "class")]
        for r in reports:
            rows.append((r.theorem_id, r.applicable, r.lhs, r.rhs, r.holds, r.equality, r.extremal_class))
        _table(rows, err)
    bad = [r for r in reports if r.anomaly]
    for r in bad:
        err.write(f"anomaly in {r.theorem_id}: {r.anomaly}\n")
    return EXIT_ANOMALY if bad else EXIT_OK


def cmd_recognize(args, out, err) -> int:
    g = read_graph(args.graph, args.format)
    if g.n == 0:
        raise Undefined("the empty graph has no Hadwiger number")
    matching = recognize_lemma1(g)
    h, _ = hadwiger_number(g)
    cliques = recognize_lemma2(g, h)
    doc = {
        "g6": to_graph6(g),
        "h": h,
        "lemma1": "none" if matching is None else {"matching": [list(e) for e in matching]},
        "lemma2": "none" if cliques is None else {"cliques": [bits(c) for c in cliques]},
    }
    _emit(doc, out)
    if args.pretty:
        _table([("family", "evidence"), ("forest+matching", doc["lemma1"]), ("twin cliques", doc["lemma2"])], err)
    return EXIT_OK


def cmd_sweep(args, out, err) -> int:
    try:
        flt = SweepFilter.parse(args.filter)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --filter: {exc}") from None
    if args.n is not None:
        if args.min_n is not None and args.min_n > args.n:
            raise UsageError("--min-n must not exceed --n")
        if not 1 <= args.n <= 7 or (args.min_n is not None and args.min_n < 1):
            raise UsageError("--n must lie in 1..7")
        source = CorpusSource.exhaustive(args.n, args.min_n, filter=flt)
    else:
        if args.stream != "-" and not os.path.isfile(args.stream):
            raise UsageError(f"no such file: {args.stream}")
        source = CorpusSource.graph6(args.stream, filter=flt)
    workers = args.workers if args.workers is not None else _default_workers()
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    summary = run_sweep(source, _theorem_ids(args.theorem), workers,
                        facts=args.facts, constructive=args.constructive, roundtrip=args.roundtrip)
    out.write(summary.to_json(timing=not args.no_timing))
    out.write("\n")
    if args.pretty:
        rows = [("theorem", "applicable", "holds", "strict", "equality")]
        for t, c in summary.theorems.items():
            rows.append((t, c["applicable"], c["holds"], c["strict"], c["equality"]))
        _table(rows, err)
        err.write(f"{summary.total} graphs, {summary.skipped} skipped, {len(summary.anomalies)} anomalies\n")
    for e in summary.errors:
        err.write(f"line {e['line']}: {e['error']}\n")
    if summary.anomalies:
        err.write(f"{len(summary.anomalies)} anomalies detected\n")
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_convert(args, out, err) -> int:
    g = read_graph(args.graph, args.format)
    if args.to == "g6":
        doc = {"format": "g6", "n": g.n, "m": g.m, "data": to_graph6(g)}
    else:
        doc = {"format": "edges", "n": g.n, "m": g.m, "data": format_edge_list(g)}
    _emit(doc, out)
    if args.pretty:
        err.write(doc["data"] + ("" if doc["data"].endswith("\n") else "\n"))
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minorforge", description="Exact clique-minor invariants and inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_command(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph6 string, '-' for stdin, or a file path")
        p.add_argument("--format", choices=("auto", "g6", "edges"), default="auto",
                       help="input format (default: detect)")
        p.add_argument("--pretty", action="store_true", help="also print a table on stderr")
        return p

    p = graph_command("invariants", "alpha, omega, h and witnesses as JSON")
    p.add_argument("--chi", action="store_true", help="include the chromatic number")
    p.set_defaults(run=cmd_invariants)

    p = graph_command("minor", "dominating-set clique minor with its validation verdict")
    p.add_argument("--exact", action="store_true", help="also compute the exact Hadwiger number")
    p.set_defaults(run=cmd_minor)

    p = graph_command("check", "evaluate the inequalities on one graph")
    p.add_argument("--theorem", action="append", metavar="ID",
                   help=f"one of {', '.join(THEOREMS)} or all (repeatable, comma lists allowed)")
    p.set_defaults(run=cmd_check)

    p = graph_command("recognize", "evidence for the two extremal families")
    p.set_defaults(run=cmd_recognize)

    p = graph_command("convert", "convert between graph6 and edge-list text")
    p.add_argument("--to", choices=("g6", "edges"), required=True)
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("sweep", help="check every graph of a corpus")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="all labeled graphs on N vertices (N <= 7)")
    src.add_argument("--stream", metavar="FILE", help="graph6 file, one graph per line ('-' for stdin)")
    p.add_argument("--min-n", type=int, help="with --n, also sweep every size from MIN_N up")
    p.add_argument("--theorem", action="append", metavar="ID")
    p.add_argument("--workers", type=int, help="worker processes (default: $MINORFORGE_WORKERS or 1)")
    p.add_argument("--filter", metavar="SPEC",
                   help="e.g. min_edges=1,require_non_complete,alpha_eq=2,omega_eq=2,connected_only")
    p.add_argument("--facts", action="store_true", help="also check structural facts (computes chi)")
    p.add_argument("--constructive", action="store_true", help="also build and check dominating-set minors")
    p.add_argument("--roundtrip", action="store_true", help="also check graph6 round trips")
    p.add_argument("--no-timing", action="store_true", help="omit runtime_ms for byte-stable output")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(run=cmd_sweep)
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except Undefined as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except GraphError as exc:
        # out-of-range edges, loops, oversize graphs: the input is unusable
        err.write(f"input error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
