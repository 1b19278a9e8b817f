"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when ``audit`` or
``verify`` reports a mismatch.

Examples::

    sombor-audit list-families
    sombor-audit compute --family Si2C3-I --p 1 --q 1 --index m1
    sombor-audit compute --family SiC3-II --index reduced_sombor --symbolic
    sombor-audit verify --theorem 7 --format json
    sombor-audit audit --format md
    sombor-audit eval --expr "1/sqrt(du*dv)" --graph ring.txt
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .audit import (
    AuditReport,
    check_closed_form_18,
    check_inequalities,
    check_theorem_vs_partition,
    check_thm17,
    run_full_audit,
)
from .dsl import eval_weight, parse_weight
from .errors import SomborAuditError
from .families import get_family, load_registry, partition_counts_at, symbolic_edge_total
from .graph import degree_pair_partition, load_edge_list
from .indices import (
    AVERAGE_SOMBOR,
    BUILTIN_INDICES,
    M_CHOICES,
    IndexDefinition,
    average_sombor_on_partition,
    index_on_graph,
    index_on_partition,
    symbolic_index,
)
from .radical import RadicalNumber, rad_to_float
from .report import findings_report, rows_to_text
from .theorems import THEOREM_CLAIMS, THM17_ENTRIES, THM18_CLAIMS

FORMATS = ("text", "csv", "json", "md")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sombor-audit", description="Degree-based index engine and claim auditor.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("list-families", help="list registered families")
    fmt(p)

    p = sub.add_parser("compute", help="evaluate an index on a family")
    p.add_argument("--family", required=True)
    p.add_argument("--p", type=_positive_int)
    p.add_argument("--q", type=_positive_int)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--index", choices=[*BUILTIN_INDICES, AVERAGE_SOMBOR])
    what.add_argument("--expr", help="edge weight over du, dv")
    p.add_argument("--m-choice", choices=M_CHOICES, default="partition-sum")
    p.add_argument("--symbolic", action="store_true", help="print the closed form instead of a value")
    p.add_argument("--lenient", action="store_true", help="keep negative partition counts")
    p.add_argument("--float", type=int, metavar="N", dest="digits", help="print N-decimal floats")
    fmt(p)

    p = sub.add_parser("verify", help="check one theorem")
    p.add_argument("--theorem", type=int, required=True)
    p.add_argument("--family", help="restrict theorem 17 / 18 inequality checks to one family")
    p.add_argument("--timestamp")
    fmt(p)

    p = sub.add_parser("audit", help="run every check")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--timestamp")
    fmt(p)

    p = sub.add_parser("eval", help="evaluate a weight expression")
    p.add_argument("--expr", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge-list file ('-' for stdin)")
    src.add_argument("--family")
    src.add_argument("--pair", nargs=2, type=_positive_int, metavar=("DU", "DV"))
    p.add_argument("--p", type=_positive_int)
    p.add_argument("--q", type=_positive_int)
    p.add_argument("--float", type=int, metavar="N", dest="digits")
    return parser


def _show(value, digits: int | None) -> str:
    if digits is not None:
        x = rad_to_float(value) if isinstance(value, RadicalNumber) else float(value)
        return f"{x:.{digits}f}"
    return str(value) if isinstance(value, RadicalNumber) else repr(value)


def _need_pq(args):
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required here")


def _cmd_list(args, out):
    rows = []
    for name, f in load_registry().items():
        rows.append({
            "family": name,
            "vertices": str(f.vertex_form),
            "claimed_edges": str(f.claimed_edge_form),
            "partition_edges": str(symbolic_edge_total(f)),
            "pairs": " ".join(f"{{{i},{j}}}" for i, j in f.partition),
        })
    out.write(rows_to_text(rows, args.format))
    return 0


def _cmd_compute(args, out):
    family = get_family(args.family, load_registry())
    idx = args.index if args.index == AVERAGE_SOMBOR else (
        BUILTIN_INDICES[args.index] if args.index else IndexDefinition.from_expr(args.expr)
    )
    if args.symbolic:
        if idx == AVERAGE_SOMBOR:
            raise UsageError("average_sombor has no bilinear closed form")
        result = str(symbolic_index(idx, family))
        text_value = result
    else:
        _need_pq(args)
        part = partition_counts_at(family, args.p, args.q, strict=not args.lenient)
        if idx == AVERAGE_SOMBOR:
            value = average_sombor_on_partition(part, args.m_choice)
        else:
            value = index_on_partition(idx, part)
        text_value = _show(value, args.digits)
    if args.format == "text":
        out.write(text_value + "\n")
        return 0
    name = idx if isinstance(idx, str) else idx.name
    row = {"family": family.name, "p": args.p or "", "q": args.q or "", "index": name, "value": text_value}
    out.write(rows_to_text([row], args.format))
    return 0


def _emit(report: AuditReport, fmt: str, out) -> int:
    out.write(findings_report(report, fmt))
    return 2 if report.has_discrepancy else 0


def _cmd_verify(args, out):
    registry = load_registry()
    tid = args.theorem
    if tid in THEOREM_CLAIMS:
        findings = [check_theorem_vs_partition(THEOREM_CLAIMS[tid], registry)]
    elif tid == 17:
        names = [args.family] if args.family else [n for n in THM17_ENTRIES if n in registry]
        missing = [n for n in names if n not in THM17_ENTRIES]
        if missing:
            raise UsageError(f"theorem 17 has no table row for {missing[0]!r}")
        findings = [check_thm17(THM17_ENTRIES[n], registry) for n in names]
    elif tid == 18:
        findings = [check_closed_form_18(c, registry) for c in THM18_CLAIMS.values()]
        names = [args.family] if args.family else list(registry)
        findings += [check_inequalities(get_family(n, registry)) for n in names]
    else:
        raise UsageError(f"no theorem {tid}; valid ids are 1-18")
    return _emit(AuditReport(findings, timestamp=args.timestamp), args.format, out)


def _cmd_audit(args, out):
    report = run_full_audit(load_registry(), workers=args.workers, timestamp=args.timestamp)
    return _emit(report, args.format, out)


def _cmd_eval(args, out):
    expr = parse_weight(args.expr)
    if args.pair:
        value = eval_weight(expr, *args.pair)
    else:
        idx = IndexDefinition.from_expr(expr)
        if args.graph:
            if args.graph == "-":
                text = sys.stdin.read()
            else:
                with open(args.graph, encoding="utf-8") as fh:
                    text = fh.read()
            value = index_on_graph(idx, load_edge_list(text))
        else:
            _need_pq(args)
            family = get_family(args.family, load_registry())
            value = index_on_partition(idx, partition_counts_at(family, args.p, args.q))
    out.write(_show(value, args.digits) + "\n")
    return 0


_COMMANDS = {
    "list-families": _cmd_list,
    "compute": _cmd_compute,
    "verify": _cmd_verify,
    "audit": _cmd_audit,
    "eval": _cmd_eval,
}


def run_cli(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().rstrip())
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 1
    except (SomborAuditError, OSError, KeyError, ArithmeticError) as exc:
        err.write(f"sombor-audit: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
