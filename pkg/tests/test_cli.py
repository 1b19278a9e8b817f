import csv
import io
import json
import subprocess
import sys

import pytest

from sombor_audit.cli import run_cli
from sombor_audit.families import FAMILY_FILE_ENV


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _no_user_family_file(monkeypatch):
    monkeypatch.delenv(FAMILY_FILE_ENV, raising=False)


def test_compute_m1():
    assert run("compute", "--family", "Si2C3-I", "--p", "1", "--q", "1", "--index", "m1") == (0, "44\n", "")


def test_compute_exact_and_float():
    code, out, _ = run("compute", "--family", "SiC3-II", "--p", "1", "--q", "1", "--index", "sombor")
    assert code == 0 and out == "9*sqrt(2) + 2*sqrt(10) + 2*sqrt(13)\n"
    code, out, _ = run("compute", "--family", "SiC3-II", "--p", "1", "--q", "1", "--index", "sombor", "--float", "4")
    assert out == "26.2636\n"


def test_compute_symbolic_and_expr():
    code, out, _ = run("compute", "--family", "Si2C3-I", "--index", "m2", "--symbolic")
    assert (code, out) == (0, "135*pq - 41*p - 61*q + 14\n")
    code, out, _ = run("compute", "--family", "Si2C3-I", "--p", "1", "--q", "1", "--expr", "du*dv")
    assert out == "47\n"


def test_compute_average_sombor_m_choice():
    code, out, _ = run("compute", "--family", "SiC3-I", "--p", "1", "--q", "1", "--index", "average_sombor",
                       "--m-choice", "claimed", "--float", "5")
    assert (code, out) == (0, "6.29549\n")


def test_compute_negative_count_and_lenient():
    code, _, err = run("compute", "--family", "SiC4-II", "--p", "1", "--q", "1", "--index", "m1")
    assert code == 1 and "|E{3,3}| = -2" in err
    code, _, _ = run("compute", "--family", "SiC4-II", "--p", "1", "--q", "1", "--index", "m1", "--lenient")
    assert code == 0


def test_compute_json_row():
    code, out, _ = run("compute", "--family", "Si2C3-I", "--p", "2", "--q", "3", "--index", "m1", "--format", "json")
    assert json.loads(out) == [{"family": "Si2C3-I", "p": 2, "q": 3, "index": "m1", "value": str(90 * 6 - 40 - 90 + 4)}]


def test_verify_theorem_7():
    code, out, _ = run("verify", "--theorem", "7", "--format", "json")
    assert code == 0
    assert [f["verdict"] for f in json.loads(out)["findings"]] == ["match"]


def test_verify_mismatch_exits_2():
    code, out, _ = run("verify", "--theorem", "5")
    assert code == 2 and "[mismatch] theorem-05" in out
    code, out, _ = run("verify", "--theorem", "17", "--family", "SiC3-I")
    assert code == 2 and "thm17 SiC3-I" in out


def test_verify_18_restricted_family():
    code, out, _ = run("verify", "--theorem", "18", "--family", "Si2C3-I", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["check_id"] for r in rows} == {"thm18-m1", "thm18-m2", "thm18-isi", "thm18-sombor-approx", "inequalities"}
    assert code == 2


def test_audit_markdown_exits_2():
    code, out, _ = run("audit", "--format", "md", "--timestamp", "T")
    assert code == 2
    assert out.startswith("# Audit report")
    assert "| mismatch |" in out


def test_audit_output_is_reproducible():
    a = run("audit", "--format", "json", "--timestamp", "T")
    b = run("audit", "--format", "json", "--timestamp", "T", "--workers", "2")
    assert a == b
    assert any(f["verdict"] != "match" for f in json.loads(a[1])["findings"])


def test_list_families():
    code, out, _ = run("list-families", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    sic = next(r for r in rows if r["family"] == "SiC3-III")
    assert sic["partition_edges"] == "12*pq - 3*p - 2*q"
    assert sic["claimed_edges"] == "12*pq - 2*p - 3*q"


def test_eval_on_graph_file(tmp_path):
    path = tmp_path / "ring.txt"
    path.write_text("0 1\n1 2\n2 3\n3 0\n")
    assert run("eval", "--expr", "1/sqrt(du*dv)", "--graph", str(path)) == (0, "2\n", "")


def test_eval_pair_and_family():
    assert run("eval", "--expr", "sqrt(du^2+dv^2)", "--pair", "2", "3")[1] == "sqrt(13)\n"
    assert run("eval", "--expr", "du+dv", "--family", "Si2C3-I", "--p", "1", "--q", "1")[1] == "44\n"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["compute", "--family", "SiC3-I"],
        ["compute", "--family", "SiC3-I", "--index", "m1"],
        ["compute", "--family", "SiC3-I", "--p", "0", "--q", "1", "--index", "m1"],
        ["verify", "--theorem", "42"],
        ["eval", "--expr", "sqrt(", "--pair", "1", "1"],
        ["eval", "--expr", "du", "--graph", "/nonexistent/file"],
        ["compute", "--family", "Nope", "--p", "1", "--q", "1", "--index", "m1"],
        ["bogus"],
    ],
)
def test_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1 and out == "" and err


def test_unknown_family_message():
    _, _, err = run("compute", "--family", "Nope", "--p", "1", "--q", "1", "--index", "m1")
    assert err.startswith("sombor-audit: error: unknown family 'Nope'")


def test_env_family_file(tmp_path, monkeypatch):
    path = tmp_path / "f.txt"
    path.write_text("family Toy\nvertices: 2*p\nedges: p\n1 1 : p\nend\n")
    monkeypatch.setenv(FAMILY_FILE_ENV, str(path))
    assert run("compute", "--family", "Toy", "--p", "3", "--q", "1", "--index", "m1") == (0, "6\n", "")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sombor_audit", "compute", "--family", "Si2C3-I",
                           "--p", "1", "--q", "1", "--index", "m2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "47\n"
    proc = subprocess.run([sys.executable, "-m", "sombor_audit", "eval", "--expr", "du*dv", "--graph", "-"],
                          input="0 1\n1 2\n", capture_output=True, text=True)
    assert proc.stdout == "4\n"
