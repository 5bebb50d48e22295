import csv
import io
import json
import subprocess
import sys

import pytest

from classprod.cli import EXIT_BUDGET, EXIT_MALFORMED, main, run


def run_json(*argv):
    text, code = run(list(argv))
    assert code == 0
    return json.loads(text)


def test_eta_exact_example():
    out = run_json("eta", "--group", "GL", "--field", "3^1", "--n", "2", "--a", "1,1;0,1", "--b", "1,1;0,1", "--exact")
    assert out["eta_exact"] >= 2
    assert out["lower_bound"] is None
    assert out["field_modulus"] == [0, 1]


def test_eta_with_bound():
    out = run_json("eta", "--group", "SL", "--field", "5", "--n", "2", "--a", "1,1;0,1", "--b", "2,0;0,3")
    assert out["lower_bound"] <= out["eta_exact"]
    assert out["bound_path"]


def test_min_scan_example():
    assert run_json("min-scan", "--group", "GL", "--field", "3^1", "--n", "3")["min"] == 4


def test_reproduce_all_pass():
    out = run_json("reproduce")
    assert out["all_pass"]
    assert {r["check"] for r in out["checks"]} >= {"min GL(2,3)", "min GL(3,3)", "eta pair SL(2,4)"}


def test_bound_has_witness_per_trace():
    out = run_json("bound", "--group", "GL", "--field", "2^2", "--n", "2", "--a", "1,1;0,1", "--b", "0,1;1,1")
    assert out["size"] == len(out["witnesses"]) >= out["floor"]
    assert out["lemma_path"].startswith("main")


def test_field_and_canon():
    out = run_json("field", "--field", "2^2", "--element", "2")
    assert out["field_modulus"] == [1, 1, 1]
    assert out["sqrt"] == 3
    out = run_json("canon", "--field", "3", "--a", "1,0,0;0,2,0;0,0,2")
    assert out["invariant_factors"] == [[1, 1], [2, 0, 1]]
    assert out["arrangement"]["tail_kind"] == "diag"


def test_classes_listing():
    out = run_json("classes", "--group", "SL", "--field", "3", "--n", "2")
    assert out["nclasses"] == 7
    assert sum(c["size"] for c in out["classes"]) == out["order"] == 24


def test_verify_command():
    out = run_json("verify", "--suite", "all", "--field", "2^2", "--trials", "100", "--seed", "3")
    assert all(s["ok"] for s in out["suites"])


def test_json_is_byte_identical_across_threads():
    args = ["min-scan", "--group", "GL", "--field", "5", "--n", "2", "--seed", "9"]
    a, _ = run(args + ["--threads", "1"])
    b, _ = run(args + ["--threads", "3"])
    assert a == b
    c, _ = run(["bound", "--group", "SL", "--field", "7", "--n", "2", "--a", "1,1;0,1", "--b", "3,0;0,5", "--seed", "12"])
    d, _ = run(["bound", "--group", "SL", "--field", "7", "--n", "2", "--a", "1,1;0,1", "--b", "3,0;0,5", "--seed", "12"])
    assert c == d and c.endswith("\n")


def _numbers(obj):
    if isinstance(obj, bool) or obj is None:
        return []
    if isinstance(obj, int):
        return [obj]
    if isinstance(obj, dict):
        return [x for v in obj.values() for x in _numbers(v)]
    if isinstance(obj, list):
        return [x for v in obj for x in _numbers(v)]
    return []


@pytest.mark.parametrize(
    "argv",
    [
        ["eta", "--group", "GL", "--field", "3", "--n", "2", "--a", "1,1;0,1", "--b", "0,1;1,1"],
        ["min-scan", "--group", "SL", "--field", "5", "--n", "2"],
        ["reproduce"],
        ["verify", "--suite", "main2", "--field", "5", "--trials", "50"],
    ],
)
def test_csv_and_json_carry_the_same_numbers(argv):
    js, _ = run(argv + ["--format", "json"])
    cs, _ = run(argv + ["--format", "csv"])
    payload = json.loads(js)
    rows = list(csv.DictReader(io.StringIO(cs)))
    csv_numbers = sorted(int(v) for r in rows for v in r.values() if v.lstrip("-").isdigit())
    json_numbers = _numbers(payload)
    for x in csv_numbers:
        assert x in json_numbers


def test_table_format():
    text, code = run(["reproduce", "--format", "table"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].split()[:2] == ["check", "expected"]
    assert set(lines[1]) <= {"-", " "}


@pytest.mark.parametrize(
    "argv,code",
    [
        (["eta", "--group", "GL", "--field", "6", "--n", "2", "--a", "1,0;0,1", "--b", "1,0;0,1"], EXIT_MALFORMED),
        (["eta", "--group", "GL", "--field", "3", "--n", "2", "--a", "1,1;0", "--b", "1,0;0,1"], EXIT_MALFORMED),
        (["eta", "--group", "SL", "--field", "3", "--n", "2", "--a", "2,0;0,1", "--b", "1,1;0,1"], EXIT_MALFORMED),
        (["bound", "--group", "GL", "--field", "3", "--n", "2", "--a", "2,0;0,2", "--b", "1,1;0,1"], EXIT_MALFORMED),
        (["classes", "--group", "GL", "--field", "13", "--n", "3"], EXIT_BUDGET),
        (["min-scan", "--group", "GL", "--field", "3", "--n", "2", "--budget", "10"], EXIT_BUDGET),
        (["frobnicate"], EXIT_MALFORMED),
        (["eta", "--group", "GL", "--field", "3", "--n", "2", "--a", "1,1;0,1"], EXIT_MALFORMED),
    ],
)
def test_exit_codes(argv, code, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == code


def test_threads_env_fallback(monkeypatch):
    from classprod import cli

    monkeypatch.setenv("CLASSPROD_THREADS", "3")
    assert cli.build_parser().parse_args(["reproduce"]).threads == 3


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "classprod.cli", "field", "--field", "3^2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["field_modulus"] == [1, 0, 1]
