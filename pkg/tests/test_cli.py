from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from torushom.cli import main
from torushom.formatting import parse_text
from torushom.invariants import colored_unknot_column
from torushom.ratfield import RatFunc, from_json
from torushom.cache import cache_store
from torushom.recursion import Conventions, MemoTable


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("TORUSHOM_CACHE", raising=False)


def test_compute_colored_unknot():
    code, out = run("compute", "--torus", "1", "1", "--color", "2", "--theory", "column", "--format", "text")
    assert code == 0
    assert parse_text(out.strip()) == colored_unknot_column(2)


def test_compute_json_and_latex():
    code, out = run("compute", "--torus", "2", "3", "--reduced", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["m"] == 2 and obj["reduced"]["den"] == []
    code, out = run("compute", "--torus", "2", "3", "--format", "latex")
    assert code == 0 and out.startswith("\\[ \\frac")


def test_state_and_explain():
    code, out = run("state", "--v", "10", "--w", "10", "--sigma", "1", "--theory", "column")
    assert code == 0
    code2, out2 = run("state", "--v", "10", "--w", "10", "--format", "json")
    assert parse_text(out.strip()) == from_json(json.loads(out2))
    code, out = run("state", "--v", "10", "--w", "10", "--explain")
    assert code == 0 and out.startswith("R7")


def test_verify_mirror_exit_zero():
    code, out = run("verify", "mirror", "--max", "3", "--color-max", "2")
    assert code == 0
    assert out.strip().splitlines()[-1] == "# mirror: 18/18 passed"


def test_verify_suites():
    for suite in ("invariance", "uncolored", "homfly", "hrw"):
        code, out = run("verify", suite, "--max", "4", "--color-max", "3")
        assert code == 0, out


def test_verify_failure_exit_one(monkeypatch):
    import torushom.invariants as inv

    monkeypatch.setattr(inv, "equal_up_to_monomial", lambda a, b: None)
    code, out = run("verify", "hrw", "--color-max", "2")
    assert code == 1
    assert "# failing: HRW ratio k=1" in out and "# failing: HRW ratio k=2" in out


def test_invalid_input_exit_two():
    assert run("compute", "--torus", "0", "3")[0] == 2
    assert run("state", "--v", "1", "--w", "0")[0] == 2
    assert run("state", "--v", "1", "--w", "1", "--sigma", "1,1")[0] == 2
    assert run("bogus")[0] == 2


def test_contradiction_exit_three(monkeypatch):
    import torushom.invariants as inv
    from torushom.errors import NotDivisible

    def boom(*a, **k):
        raise NotDivisible("tripwire")

    monkeypatch.setattr(inv, "reduced_invariant", boom)
    assert run("compute", "--torus", "2", "3", "--reduced")[0] == 3


def test_table_text_json_and_figures(tmp_path):
    code, out = run("table", "--max", "2", "--color-max", "2", "--reduced", "--figures", str(tmp_path))
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].split("\t") == ["m", "n", "k", "theory", "value", "reduced"]
    assert len(lines) == 1 + 8
    for line in lines[1:]:
        parse_text(line.split("\t")[4])
    assert len(list(tmp_path.glob("*.png"))) == 8
    code, out = run("table", "--max", "2", "--format", "json")
    assert [json.loads(l)["n"] for l in out.strip().splitlines()] == [1, 2, 1, 2]


def test_table_deterministic():
    a = run("table", "--max", "3", "--color-max", "2")[1]
    b = run("table", "--max", "3", "--color-max", "2")[1]
    assert a == b


def test_jobs_match_serial(tmp_path):
    serial = run("verify", "invariance", "--max", "4", "--color-max", "2")[1]
    cache = tmp_path / "c.jsonl"
    parallel = run("verify", "invariance", "--max", "4", "--color-max", "2", "--jobs", "2",
                   "--cache", str(cache))[1]
    assert serial == parallel
    assert cache.stat().st_size > 0


def test_cache_flags_and_env(tmp_path, monkeypatch):
    path = tmp_path / "c.jsonl"
    assert run("compute", "--torus", "2", "3", "--cache", str(path))[0] == 0
    code, out = run("cache", "info", "--cache", str(path))
    assert code == 0 and json.loads(out)["entries"] > 0
    monkeypatch.setenv("TORUSHOM_CACHE", str(path))
    code, out = run("cache", "info")
    assert code == 0 and json.loads(out)["path"] == str(path)


def test_cache_wrong_fingerprint_exit_two(tmp_path):
    path = tmp_path / "c.jsonl"
    memo = MemoTable(Conventions(cycle4="up"))
    memo.insert(("column", "", "", ()), RatFunc(1))
    cache_store(memo, path)
    assert run("compute", "--torus", "1", "1", "--cache", str(path))[0] == 2
    assert run("cache", "info", "--cache", str(path))[0] == 2
    assert run("cache", "info")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torushom", "compute", "--torus", "1", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "(A + 1)" in proc.stdout
