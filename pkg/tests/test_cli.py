import csv
import io
import json
import subprocess
import sys

import pytest

from grundy import cli


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(ln) for ln in out.splitlines() if ln.startswith("{")], out


def test_solve_json(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["solve"], "Dhc\n")
    assert code == cli.EXIT_OK
    assert recs[0]["gamma"] == 4 and recs[0]["exact"]
    assert recs[0]["command"].startswith("grundy solve --variant l")


def test_solve_one_indexed(capsys, monkeypatch):
    _, recs, _ = run(capsys, monkeypatch, ["solve", "--one-indexed"], "Bw\n")
    assert recs[0]["witness"] == [1, 2]


def test_solve_csv(capsys, monkeypatch):
    code, _, out = run(capsys, monkeypatch, ["solve", "--variant", "classic", "--format", "csv"], "Bw\n")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["gamma"] == "1" and rows[0]["variant"] == "classic"


def test_solve_malformed_keeps_going(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["batch"], "Bw\nB!\n3 2\n0 1\n1 2\n")
    assert code == cli.EXIT_MALFORMED
    assert [("error" in r) for r in recs] == [False, True, False]
    assert recs[2]["gamma"] == 3


def test_solve_budget(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["solve", "--node-budget", "1"], "Grh\\Qk\n")
    assert code == cli.EXIT_BUDGET
    assert recs[0]["exact"] is False


def test_solve_file_and_out(tmp_path):
    src = tmp_path / "in.g6"
    src.write_text("Bw\nDhc\n")
    out = tmp_path / "out.jsonl"
    assert cli.main(["solve", str(src), "--out", str(out)]) == 0
    assert [json.loads(x)["gamma"] for x in out.read_text().splitlines()] == [2, 4]


def test_verify_figure1(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["verify", "Cx", "0", "1", "3", "2"])
    assert code == 0 and recs[0]["valid"] and recs[0]["length"] == 4
    assert recs[0]["steps"][2]["newly"] == [3]


def test_verify_one_indexed(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["verify", "Cx", "1 2 4 3", "--one-indexed"])
    assert code == 0 and recs[0]["sequence"] == [1, 2, 4, 3]


def test_verify_invalid(capsys, monkeypatch):
    code, recs, _ = run(capsys, monkeypatch, ["verify", "Bw", "0", "1", "2"])
    assert code == cli.EXIT_INVALID
    assert recs[0]["failed_index"] == 2 and recs[0]["reason"] == "empty"
    code, recs, _ = run(capsys, monkeypatch, ["verify", "Bw", "0", "0"])
    assert recs[0]["reason"] == "duplicate"


def test_verify_malformed(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["verify", "B!", "0"])[0] == cli.EXIT_MALFORMED
    assert run(capsys, monkeypatch, ["verify", "Bw", "x"])[0] == cli.EXIT_MALFORMED


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--family", "clique-with-leaves", "--n", "4"], 7),
        (["--family", "double-cycle-bridge", "--n", "3"], 5),
        (["--family", "cycle", "--n", "7"], 6),
        (["--family", "leaf-augment", "--graph", "C~"], 8),
        (["--family", "saturate", "--graph", "Dhc"], 6),
        (["--family", "t-structure", "--k", "3"], 6),
    ],
)
def test_generate(capsys, monkeypatch, argv, expected):
    code, recs, _ = run(capsys, monkeypatch, ["generate"] + argv)
    assert code == 0 and recs[0]["expected_gamma"] == expected


def test_generate_errors(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["generate", "--family", "cycle"])[0] == cli.EXIT_MALFORMED
    assert run(capsys, monkeypatch, ["generate", "--family", "cycle", "--n", "2"])[0] == cli.EXIT_MALFORMED
    assert run(capsys, monkeypatch, ["generate", "--family", "leaf-augment", "--graph", "Dhc"])[0] == cli.EXIT_MALFORMED


def test_check_exhaustive_with_summary_and_figure(tmp_path):
    out, fig = tmp_path / "r.jsonl", tmp_path / "s.png"
    code = cli.main(["check", "--corpus", "exhaustive", "--n", "4", "--out", str(out), "--figure", str(fig)])
    assert code == 0
    rows = list(csv.DictReader(open(str(out) + ".summary.csv")))
    assert {r["fails"] for r in rows} == {"0"}
    assert fig.stat().st_size > 0


def test_check_inconclusive(tmp_path):
    src = tmp_path / "g.g6"
    src.write_text("Grh\\Qk\n")
    code = cli.main(["check", "--corpus", str(src), "--suite", "delta-bound", "--node-budget", "1",
                     "--out", str(tmp_path / "r.jsonl")])
    assert code == cli.EXIT_BUDGET


def test_check_bad_corpus(capsys, monkeypatch, tmp_path):
    src = tmp_path / "bad.g6"
    src.write_text("B!\n")
    assert run(capsys, monkeypatch, ["check", "--corpus", str(src)])[0] == cli.EXIT_MALFORMED


def test_search(tmp_path, capsys, monkeypatch):
    fig = tmp_path / "d.png"
    code, recs, _ = run(capsys, monkeypatch, ["search", "--target", "vertex-deltas", "--seed-graph", "D~G",
                                              "--steps", "5", "--figure", str(fig)])
    assert code == 0 and recs[0]["all_values_realized"]
    assert recs[0]["best_deltas"] == [-2, -1, 0]
    assert fig.exists()


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "grundy", "solve"], input="A_\n", capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["gamma"] == 2
