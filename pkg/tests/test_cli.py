import csv
import io
import json
import subprocess
import sys

import pytest

from freemetric.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["len", "--metric", "wc", "--word", "abAB"], "2"),
        (["len", "--metric", "word", "--word", "abAB"], "4"),
        (["len", "--metric", "cyc", "--word", "baB"], "1"),
        (["len", "--metric", "brooks:ab", "--word", "abab"], "2"),
        (["len", "--metric", "wc", "--word", "abAB", "--weights", "a=1,b=5"], "2"),
        (["dist", "--metric", "edit", "--u", "ab", "--v", "ba"], "2"),
        (["dist", "--metric", "fg", "--u", "ab", "--v", "ba"], "2"),
        (["dist", "--metric", "word", "--u", "a", "--v", "b"], "2"),
    ],
)
def test_len_and_dist(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.strip() == expected


def test_len_witness():
    code, out, _ = run("len", "--metric", "wc", "--word", "abAB", "--witness")
    assert code == 0
    value, pairs = out.splitlines()
    assert value == "2" and pairs.startswith("pairs: (")


def test_len_so3_and_pullback():
    code, out, _ = run("len", "--metric", "so3:4:auto:0", "--word", "ab")
    assert code == 0 and 0 < float(out) <= 2 * 3.1416 / 8 + 1e-9
    code, out, _ = run("len", "--metric", "pullback", "--word", "b")
    assert code == 0 and float(out) == pytest.approx(2**0.5)


@pytest.mark.parametrize(
    "argv",
    [
        ["len", "--metric", "wc", "--word", "ab!"],
        ["len", "--metric", "nope", "--word", "ab"],
        ["len", "--metric", "so3:4:auto", "--word", "ab"],
        ["len", "--metric", "so3:12:0.5:0", "--word", "ab"],
        ["len", "--metric", "so3:2:auto:0", "--word", "abab"],
        ["len", "--metric", "brooks:", "--word", "ab"],
        ["len", "--metric", "wc", "--word", "ab", "--weights", "a=0"],
        ["dist", "--metric", "edit", "--u", "aB", "--v", "a"],
        ["verify", "--suite", "bogus"],
        ["verify", "--suite", "walk", "--n", "6"],
        ["verify", "--suite", "walk", "--rank", "3"],
        ["sweep", "--kind", "wc-defect-family", "--k", ""],
        ["sweep", "--kind", "so3-ratio", "--eps", "2.0"],
        ["sweep", "--kind", "homogenize", "--N", "3"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert err


def test_verify_exact_walk():
    code, out, _ = run("verify", "--suite", "walk", "--n", "4", "--exact")
    assert code == 0
    report = json.loads(out)
    (row,) = report["rows"]
    assert row["value"] == 1.5 and row["bound"] == 2 and row["status"] == "pass"
    assert report["summary"]["fail"] == 0


def test_verify_paper_values_row():
    code, out, _ = run("verify", "--suite", "paper-values")
    assert code == 0
    rows = {r["id"]: r for r in json.loads(out)["rows"]}
    assert rows["paper-values/wc([a,b]^3)"]["value"] == 4


def test_verify_report_schema():
    code, out, _ = run("verify", "--suite", "walk", "--n", "4", "--exact")
    report = json.loads(out)
    assert set(report) == {"version", "config", "rows", "summary"}
    assert report["config"]["seed"] == 42
    for row in report["rows"]:
        assert {"id", "anchor", "status", "value", "bound", "margin", "witness"} <= set(row)


def test_verify_deterministic_and_jobs_invariant():
    _, first, _ = run("verify", "--suite", "axioms", "--seed", "42")
    _, second, _ = run("verify", "--suite", "axioms", "--seed", "42")
    assert first == second
    _, a, _ = run("verify", "--suite", "paper-values")
    _, b, _ = run("verify", "--suite", "paper-values", "--jobs", "3")
    assert a == b


def test_verify_hard_failure_exit_1(monkeypatch):
    from freemetric import suites
    from freemetric.report import Row

    def failing(cfg):
        return [Row("broken", "test", "fail", 3, 2, -1, ["ab"]),
                Row("soft", "test", "warn", 1, 0, -1, ["a"], hard=False)]

    monkeypatch.setitem(suites.SUITE_FUNCS, "walk", failing)
    code, out, _ = run("verify", "--suite", "walk")
    assert code == 1
    report = json.loads(out)
    assert report["summary"]["fail"] == 1
    assert all(r["witness"] for r in report["rows"] if r["status"] == "fail")


def test_verify_soft_warning_exit_0(monkeypatch):
    from freemetric import suites
    from freemetric.report import Row

    monkeypatch.setitem(suites.SUITE_FUNCS, "walk",
                        lambda cfg: [Row("soft", "test", "warn", 1, 0, -1, ["a"], hard=False)])
    assert run("verify", "--suite", "walk")[0] == 0


def test_verify_formats(tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = run("verify", "--suite", "walk", "--n", "4", "--exact", "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(path.open()))
    assert rows[0]["status"] == "pass"
    code, out, _ = run("verify", "--suite", "walk", "--n", "4", "--exact", "--format", "text")
    assert "PASS" in out


def test_sweeps():
    code, out, _ = run("sweep", "--kind", "wc-defect-family", "--k", "1..3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    assert [float(r["wc_z"]) for r in rows if r["family"] == "[a^k,b^k]"] == [2, 4, 6]
    code, out, _ = run("sweep", "--kind", "so3-ratio", "--eps", "0.1,0.01", "--seeds", "0,1", "--radius", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and all(r["violations"] == "0" for r in rows)
    code, out, _ = run("sweep", "--kind", "homogenize", "--metric", "word", "--word", "baB", "--N", "2,4,8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["estimate"]) for r in rows] == [2.0, 1.5, 1.25]
    assert all(float(r["lower"]) <= 1 <= float(r["upper"]) for r in rows)


def test_limits_from_environment(monkeypatch):
    monkeypatch.setenv("FREEMETRIC_LIMITS", "dp_length=3")
    code, _, err = run("len", "--metric", "wc", "--word", "abAB")
    assert code == 2 and "limit" in err.lower()
    monkeypatch.setenv("FREEMETRIC_LIMITS", "bogus=1")
    assert run("len", "--metric", "wc", "--word", "ab")[0] == 2
    monkeypatch.delenv("FREEMETRIC_LIMITS")
    assert run("len", "--metric", "wc", "--word", "abAB")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freemetric", "len", "--metric", "wc", "--word", "abAB"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
