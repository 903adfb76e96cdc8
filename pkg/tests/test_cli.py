import json
import os
import subprocess
import sys

import pytest

from state_harvest.cli import main
from state_harvest.corpus import GOLDEN_FILE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tcp_dir(tmp_path, capsys):
    d = tmp_path / "tcp"
    assert run(capsys, "gen", "tcp", "--out", str(d))[0] == 0
    return d


def test_gen_tcp(tcp_dir):
    assert (tcp_dir / GOLDEN_FILE).is_file()
    assert len(list((tcp_dir / "src").glob("*.java"))) == 15


def test_extract_json(capsys, tcp_dir):
    code, out, err = run(capsys, "extract", str(tcp_dir / "src"), "--format", "json")
    assert code == 0 and err == ""
    assert out.endswith("]}\n") and out.count("\n") == 1
    data = json.loads(out)
    assert (len(data["states"]), len(data["transitions"])) == (11, 21)
    assert out == (tcp_dir / GOLDEN_FILE).read_text()


def test_extract_core_has_no_labels(capsys, tcp_dir):
    code, out, _ = run(capsys, "extract", str(tcp_dir / "src"), "--tasks", "core")
    assert code == 0
    assert all(set(t) == {"src", "dst"} for t in json.loads(out)["transitions"])


def test_extract_dot(capsys, tcp_dir):
    code, out, _ = run(capsys, "extract", str(tcp_dir / "src"), "--format", "dot")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "digraph statemachine {" and lines[-1] == "}"
    assert len(lines) == 2 + 11 + 21


@pytest.mark.parametrize("fmt", ["json", "dot"])
def test_out_file_matches_stdout(capsys, tcp_dir, tmp_path, fmt):
    target = tmp_path / f"m.{fmt}"
    code, out, _ = run(capsys, "extract", str(tcp_dir / "src"), "--format", fmt)
    assert run(capsys, "extract", str(tcp_dir / "src"), "--format", fmt, "--out", str(target)) == (0, "", "")
    assert target.read_bytes() == out.encode()


def test_check_equal_and_mismatch(capsys, tcp_dir, tmp_path):
    golden = tcp_dir / GOLDEN_FILE
    assert run(capsys, "check", "--model", str(golden), "--golden", str(golden))[0] == 0

    data = json.loads(golden.read_text())
    dropped = data["transitions"].pop(3)
    smaller = tmp_path / "smaller.json"
    smaller.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", "--model", str(golden), "--golden", str(smaller))
    assert code == 1
    assert out.startswith(f"extra transition: {dropped['src']} -> {dropped['dst']}")


def test_check_permuted_model(capsys, tcp_dir, tmp_path):
    golden = tcp_dir / GOLDEN_FILE
    data = json.loads(golden.read_text())
    data["states"].reverse()
    data["transitions"].reverse()
    permuted = tmp_path / "permuted.json"
    permuted.write_text(json.dumps(data, indent=2))
    assert run(capsys, "check", "--model", str(permuted), "--golden", str(golden))[0] == 0


@pytest.mark.parametrize("argv", [
    ["extract", "nonexistent/"],
    ["gen", "scale", "--states", "0", "--out", "x"],
    ["gen", "tcp"],
    ["frobnicate"],
    [],
    ["extract", ".", "--format", "xml"],
    ["check", "--model", "missing.json", "--golden", "missing.json"],
])
def test_usage_errors(capsys, monkeypatch, tmp_path, argv):
    monkeypatch.chdir(tmp_path)
    code, out, err = run(capsys, *argv)
    assert code == 4 and out == ""
    assert err.startswith("usage error")


def test_malformed_model_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states":[{"name":"A"}],"transitions":[{"src":"A","dst":"B"}]}')
    assert run(capsys, "check", "--model", str(bad), "--golden", str(bad))[0] == 4


def test_bad_thread_env_is_usage_error(capsys, monkeypatch, tcp_dir):
    monkeypatch.setenv("STATE_HARVEST_THREADS", "zero")
    assert run(capsys, "stats", str(tcp_dir))[0] == 4


def test_parse_error_exit(capsys, tmp_path):
    (tmp_path / "Bad.java").write_text("class {\n")
    (tmp_path / "Worse.java").write_text("enum")
    code, out, err = run(capsys, "extract", str(tmp_path))
    assert code == 2 and out == ""
    assert err.count("error: ") == 2
    assert "Bad.java:1:7: expected identifier, found '{'" in err


def _write_states(tmp_path, body):
    (tmp_path / "State.java").write_text("abstract class State { }")
    (tmp_path / "A.java").write_text(f"class A extends State {{ {body} }}")
    (tmp_path / "B.java").write_text("class B extends State { }")


def test_extraction_error_exit(capsys, tmp_path):
    _write_states(tmp_path, "void go() { send(make()); B.Instance().activate(); }")
    code, out, err = run(capsys, "extract", str(tmp_path))
    assert code == 3 and out == ""


def test_warnings_and_strict_warnings(capsys, tmp_path):
    _write_states(tmp_path, "void go() { Ghost.Instance().activate(); B.Instance().activate(); }")
    code, out, err = run(capsys, "extract", str(tmp_path))
    assert code == 0
    assert err.startswith("WARN unresolved-dst ")
    assert json.loads(out)["transitions"] == [{"src": "A", "dst": "B", "trigger": "go", "action": "--"}]
    code, out, err = run(capsys, "extract", str(tmp_path), "--strict-warnings")
    assert code == 3 and out == ""


def test_lenient_flag(capsys, tmp_path):
    _write_states(tmp_path, "void go() { x = c ? 1 : 2; } void run() { B.Instance().activate(); }")
    assert run(capsys, "extract", str(tmp_path))[0] == 2
    code, out, err = run(capsys, "extract", str(tmp_path), "--lenient")
    assert code == 0 and "WARN opaque-body" in err
    assert json.loads(out)["transitions"] == [{"src": "A", "dst": "B", "trigger": "--", "action": "--"}]
    assert run(capsys, "extract", str(tmp_path), "--lenient", "--strict-warnings")[0] == 3


def test_root_class_flag(capsys, tmp_path):
    (tmp_path / "Mode.java").write_text("abstract class Mode { }")
    (tmp_path / "On.java").write_text("class On extends Mode { void off() { Off.Instance().activate(); } }")
    (tmp_path / "Off.java").write_text("class Off extends Mode { }")
    code, out, _ = run(capsys, "extract", str(tmp_path), "--root-class", "Mode")
    assert code == 0 and json.loads(out)["states"] == [{"name": "Off"}, {"name": "On"}]


def _stats(out):
    rows = dict(line.split(": ") for line in out.splitlines())
    return {k: float(v) if k == "parse_seconds" else int(v) for k, v in rows.items()}


def test_stats_tcp(capsys, tcp_dir):
    code, out, _ = run(capsys, "stats", str(tcp_dir / "src"))
    s = _stats(out)
    assert code == 0
    assert (s["files"], s["classes"], s["enums"]) == (15, 14, 1)
    assert s["edges"] == s["nodes"] - s["files"]
    assert 1000 <= s["total"] < 10_000


def test_stats_empty_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "stats", str(tmp_path))
    s = _stats(out)
    assert code == 0
    assert all(v == 0 for k, v in s.items() if k != "parse_seconds")


def test_gen_scale_is_deterministic(capsys, tmp_path):
    args = ["gen", "scale", "--states", "7", "--per-state", "2", "--nesting", "3", "--seed", "5"]
    run(capsys, *args, "--out", str(tmp_path / "a"))
    run(capsys, *args, "--out", str(tmp_path / "b"))
    files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
    files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
    assert files_a == files_b
    for rel in files_a:
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()


def test_gen_extract_check_pipeline(capsys, tmp_path):
    d = tmp_path / "deep"
    assert run(capsys, "gen", "scale", "--states", "9", "--per-state", "3", "--nesting", "4",
               "--seed", "1", "--deep", "2", "3", "--out", str(d))[0] == 0
    model = tmp_path / "model.json"
    assert run(capsys, "extract", str(d / "src"), "--out", str(model))[0] == 0
    assert run(capsys, "check", "--model", str(model), "--golden", str(d / GOLDEN_FILE))[0] == 0


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "state_harvest", "gen", "tcp", "--out", str(tmp_path)],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout == ""
    proc = subprocess.run([sys.executable, "-m", "state_harvest", "extract", str(tmp_path / "src")],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert proc.stdout == (tmp_path / GOLDEN_FILE).read_text()
