import csv
import io
import json

from sombor_audit.audit import AuditReport, Finding, Sample
from sombor_audit.forms import piecewise
from sombor_audit.report import CSV_FIELDS, findings_report, report_to_csv, report_to_json, report_to_markdown, rows_to_text


def _report():
    return AuditReport(
        [
            Finding("edge-total", "X", "mismatch", piecewise("q - p"), [Sample(1, 2, 3.0, 2.0), Sample(2, 2, 4.0, 4.0)], "a|b"),
            Finding("count-validity", "X", "match", note="fine"),
        ],
        timestamp="T",
    )


def test_csv_has_one_row_per_sample():
    rows = list(csv.DictReader(io.StringIO(report_to_csv(_report()))))
    assert tuple(rows[0]) == CSV_FIELDS
    assert [(r["check_id"], r["p"]) for r in rows] == [("count-validity", ""), ("edge-total", "1"), ("edge-total", "2")]
    assert rows[1]["abs_diff"] == "1.0" and rows[1]["symbolic_difference"] == "-p + q"


def test_json_round_trip():
    data = json.loads(report_to_json(_report()))
    assert data["summary"]["mismatch"] == 1 and data["timestamp"] == "T"
    assert "symbolic_difference" not in data["findings"][0]
    assert data["findings"][1]["numeric_samples"][0] == {"p": 1, "q": 2, "lhs": 3.0, "rhs": 2.0, "abs_diff": 1.0}


def test_markdown_escapes_pipes():
    md = report_to_markdown(_report())
    assert "a\\|b" in md and "| mismatch | 1 |" in md


def test_text_format():
    text = findings_report(_report(), "text")
    assert "[mismatch] edge-total X\n    difference: -p + q" in text
    assert text.rstrip().endswith("summary: match=1, mismatch=1, region-mismatch=0, not-applicable=0")


def test_rows_to_text():
    rows = [{"a": 1, "b": "x|y"}]
    assert rows_to_text(rows, "md") == "| a | b |\n|---|---|\n| 1 | x\\|y |\n"
    assert rows_to_text(rows, "text") == "1  x|y\n"
    assert json.loads(rows_to_text(rows, "json")) == rows
