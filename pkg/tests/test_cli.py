import io
import json
import subprocess
import sys

import pytest

from conftest import EXAMPLE, FIG1
from seedscan import is_seed
from seedscan.cli import main, parse_sizes


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin)))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig1(tmp_path):
    p = tmp_path / "fig1.txt"
    p.write_bytes(FIG1.encode() + b"\n")
    return str(p)


def test_shortest_seed(capsys, monkeypatch, fig1):
    code, out, _ = run(capsys, monkeypatch, ["shortest-seed", fig1])
    assert code == 0
    assert out.splitlines()[0] == "abaa"
    assert "length 4" in out


def test_trailing_newline_kept_on_request(capsys, monkeypatch, fig1):
    code, out, _ = run(capsys, monkeypatch, ["--format", "json", "--keep-trailing-newline",
                                             "shortest-seed", fig1])
    assert code == 0 and json.loads(out)["n"] == len(FIG1) + 1


def test_quasigaps_row(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["quasigaps", "-"], EXAMPLE.encode())
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert any(r[4] == "aaabaaa" and r[3] == "5" for r in rows)


def test_seeds_stdin_json(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["seeds", "-", "--format", "json"], b"abc")
    data = json.loads(out)
    assert code == 0
    assert data["n"] == 3
    assert data["shortest"] == {"pos": 1, "len": 3}
    assert [(s["lo"], s["hi"]) for s in data["seeds"]] == [(3, 3)]
    assert set(data["seeds"][0]) >= {"edgeNode", "lo", "hi"}


def test_json_round_trip(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["--format", "json", "seeds", "-"], FIG1.encode())
    data = json.loads(out)
    for s in data["seeds"]:
        for k in range(s["lo"], s["hi"] + 1):
            assert is_seed(FIG1[s["start"] - 1:s["start"] - 1 + k], FIG1)
    p, k = data["shortest"]["pos"], data["shortest"]["len"]
    assert FIG1[p - 1:p - 1 + k] == "abaa"


def test_enumerate_with_limit(capsys, monkeypatch, fig1):
    code, out, _ = run(capsys, monkeypatch, ["--format", "json", "seeds", fig1, "--enumerate",
                                             "--max-count", "3"])
    data = json.loads(out)
    assert len(data["enumerated"]) == 3
    assert data["enumerated"][0]["word"] == "abaa"


def test_factorize(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["--format", "json", "factorize", "-"], b"abaabab")
    data = json.loads(out)
    assert [f["len"] for f in data["factors"]] == [1, 1, 1, 3, 1]
    assert data["lpnf"][0] == 0


def test_verify(capsys, monkeypatch, fig1):
    code, out, _ = run(capsys, monkeypatch, ["verify", fig1])
    assert code == 0 and out.strip().endswith("OK")


def test_verify_size_guard(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["verify", "-"], b"ab" * 100)
    assert code == 2 and "limited" in err


def test_verify_reports_mismatch(capsys, monkeypatch):
    import seedscan.oracle as oracle

    monkeypatch.setattr(oracle, "brute_all_seeds", lambda w: set())
    code, out, err = run(capsys, monkeypatch, ["verify", "-"], b"abaab")
    assert code == 1 and "MISMATCH" in out and err


def test_tokens(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["--alphabet", "tokens", "--format", "json",
                                             "shortest-seed", "-"], b"10 200 10 200 10\n")
    assert code == 0 and json.loads(out)["shortest"]["len"] == 2
    code, _, err = run(capsys, monkeypatch, ["--alphabet", "tokens", "seeds", "-"], b"1 x")
    assert code == 2 and err


@pytest.mark.parametrize("argv,stdin", [
    (["seeds", "/nonexistent/file"], None),
    (["seeds", "-"], b""),
    (["seeds", "-"], b"\n"),
    (["nonsense"], None),
    (["bench", "--sizes", "2^5..2^3"], None),
    (["bench", "--family", "nope"], None),
])
def test_usage_errors(capsys, monkeypatch, argv, stdin):
    code, out, err = run(capsys, monkeypatch, argv, stdin)
    assert code == 2
    assert err


def test_bench(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["--format", "json", "bench", "--sizes", "2^8,300",
                                             "--family", "fibonacci"])
    rows = json.loads(out)["rows"]
    assert [r["n"] for r in rows] == [256, 300]
    assert all(r["solve_s"] >= 0 for r in rows)


def test_parse_sizes():
    assert parse_sizes("2^14..2^16") == [1 << 14, 1 << 15, 1 << 16]
    assert parse_sizes("100,2^3") == [100, 8]


def test_module_entry_point(tmp_path):
    p = tmp_path / "w"
    p.write_text("abc")
    res = subprocess.run([sys.executable, "-m", "seedscan", "shortest-seed", str(p)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "abc"
