"""JSON, Markdown and CSV renderings of audit reports and tables."""

from __future__ import annotations

import csv
import io
import json

from .audit import AuditReport, Finding

__all__ = ["report_to_json", "report_to_markdown", "report_to_csv", "findings_report", "rows_to_text"]

CSV_FIELDS = ("check_id", "family", "verdict", "p", "q", "lhs", "rhs", "abs_diff", "symbolic_difference", "note")


def report_to_json(report: AuditReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


def report_to_markdown(report: AuditReport) -> str:
    out = ["# Audit report", ""]
    meta = f"tool version {report.tool_version}"
    if report.timestamp:
        meta += f", {report.timestamp}"
    out += [meta, "", "| verdict | count |", "|---|---|"]
    out += [f"| {v} | {n} |" for v, n in report.summary.items()]
    out += ["", "| check | family | verdict | symbolic difference | note |", "|---|---|---|---|---|"]
    for f in report.findings:
        diff = "" if f.symbolic_difference is None else str(f.symbolic_difference)
        out.append(
            f"| {f.check_id} | {f.family} | {f.verdict} | {_md_cell(diff)} | {_md_cell(f.note)} |"
        )
    return "\n".join(out) + "\n"


def _finding_rows(f: Finding):
    base = {
        "check_id": f.check_id,
        "family": f.family,
        "verdict": f.verdict,
        "symbolic_difference": "" if f.symbolic_difference is None else str(f.symbolic_difference),
        "note": f.note,
    }
    if not f.numeric_samples:
        yield {**base, "p": "", "q": "", "lhs": "", "rhs": "", "abs_diff": ""}
    for s in f.numeric_samples:
        yield {**base, "p": s.p, "q": s.q, "lhs": repr(s.lhs), "rhs": repr(s.rhs), "abs_diff": repr(s.abs_diff)}


def report_to_csv(report: AuditReport) -> str:
    """One row per (finding, numeric sample); sample-less findings get one row."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for f in report.findings:
        writer.writerows(_finding_rows(f))
    return buf.getvalue()


def findings_report(report: AuditReport, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    if fmt == "md":
        return report_to_markdown(report)
    lines = []
    for f in report.findings:
        lines.append(f"[{f.verdict}] {f.check_id} {f.family}")
        if f.symbolic_difference is not None and not f.symbolic_difference.is_zero():
            lines.append(f"    difference: {f.symbolic_difference}")
        if f.note:
            lines.append(f"    {f.note}")
    lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in report.summary.items()))
    return "\n".join(lines) + "\n"


def rows_to_text(rows: list[dict], fmt: str) -> str:
    """Render a list of flat dicts (same keys) as text, csv, json or md."""
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    keys = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        out = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
        out += ["| " + " | ".join(_md_cell(str(r[k])) for k in keys) + " |" for r in rows]
        return "\n".join(out) + "\n"
    return "\n".join("  ".join(str(r[k]) for k in keys) for r in rows) + "\n"
