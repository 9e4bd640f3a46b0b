import io
import json

import pytest

from cwcolour.cli import main
from cwcolour.term import parse_term

from conftest import EDGE, FIVE_VERTEX_TERM, TRIANGLE


def run(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_triangle(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["check", "--colours", "3"], TRIANGLE)
    assert (code, out.strip()) == (0, "COLOURABLE")
    code, out, _ = run(monkeypatch, capsys, ["check", "-c", "2"], TRIANGLE)
    assert (code, out.strip()) == (1, "NOT COLOURABLE")


def test_check_from_file(monkeypatch, capsys, tmp_path):
    path = tmp_path / "t.cw"
    path.write_text(FIVE_VERTEX_TERM)
    assert run(monkeypatch, capsys, ["check", "-c", "3", "--input", str(path)])[0] == 0
    assert run(monkeypatch, capsys, ["check", "-c", "2", "-i", str(path)])[0] == 1


def test_check_json(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["check", "-c", "2", "--json", "--witnesses"], FIVE_VERTEX_TERM)
    assert code == 1
    verdict, body = out.split("\n", 1)
    assert verdict == "NOT COLOURABLE"
    body = json.loads(body)
    assert body["colourable"] is False and body["colours"] == 2
    assert {"pos", "k_prime", "set_size", "N_s_bound", "closure_size"} <= set(body["stats"][0])


def test_check_witnesses_verified(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["check", "-c", "3", "--json", "--witnesses"], FIVE_VERTEX_TERM)
    body = json.loads(out.split("\n", 1)[1])
    assert code == 0 and body["verified"] is True
    assert set(body["assignment"]) == {"w", "w'", "x", "y", "z"}


def test_malformed_input(monkeypatch, capsys):
    code, out, err = run(monkeypatch, capsys, ["check", "-c", "2"], "(add 1 1 (v 1 x))")
    assert code == 2 and out == "" and "error" in err
    code, _, err = run(monkeypatch, capsys, ["chromatic"], "(u (v 1 x)")
    assert code == 2 and "line 1" in err


def test_missing_file(monkeypatch, capsys, tmp_path):
    code, _, err = run(monkeypatch, capsys, ["graph", "-i", str(tmp_path / "nope")])
    assert code == 2 and err


def test_missing_colours(monkeypatch, capsys):
    with pytest.raises(SystemExit) as exc:
        run(monkeypatch, capsys, ["check"], TRIANGLE)
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        run(monkeypatch, capsys, ["check", "-c", "0"], TRIANGLE)


def test_chromatic(monkeypatch, capsys):
    assert run(monkeypatch, capsys, ["chromatic"], FIVE_VERTEX_TERM)[:2] == (0, "3\n")
    assert run(monkeypatch, capsys, ["chromatic"], EDGE)[:2] == (0, "2\n")


def test_colouring(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["colouring", "-c", "2"], EDGE)
    body = json.loads(out)
    assert code == 0 and body["colours"] == 2
    assert body["assignment"]["x"] != body["assignment"]["y"]
    code, out, _ = run(monkeypatch, capsys, ["colouring", "-c", "2"], TRIANGLE)
    assert code == 1 and json.loads(out) == {"unsat": True}


def test_annotate(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["annotate"], EDGE)
    rows = json.loads(out)
    assert code == 0
    assert [r["pos"] for r in rows] == ["0.0", "0.1", "0", "ε"]
    assert rows[2]["pending"] == [[1, 2]]


def test_stats(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["stats", "-c", "3"], TRIANGLE)
    rows = json.loads(out)
    assert code == 0 and len(rows) == len(parse_term(TRIANGLE).nodes)
    for row in rows:
        assert {"pos", "k_prime", "set_size", "N_s_bound", "closure_size"} <= set(row)
        assert row["set_size"] <= row["N_s_bound"]


def test_graph(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["graph"], TRIANGLE)
    assert code == 0
    assert out.splitlines()[0].split()[1:] == ["3", "3"]


def test_oracle_check(monkeypatch, capsys, tmp_path):
    path = tmp_path / "t.cw"
    path.write_text(TRIANGLE)
    code, out, _ = run(monkeypatch, capsys, ["oracle", "check", "-c", "2", str(path)])
    assert (code, out.strip()) == (1, "NOT COLOURABLE")
    code, out, _ = run(monkeypatch, capsys, ["oracle", "check", "-c", "3"], TRIANGLE)
    assert (code, out.strip()) == (0, "COLOURABLE")


def test_gen(monkeypatch, capsys):
    argv = ["gen", "--seed", "7", "--n", "6", "--k", "3"]
    code, out, _ = run(monkeypatch, capsys, argv)
    assert code == 0
    t = parse_term(out)
    assert len(t.vertex_names) == 6
    assert run(monkeypatch, capsys, argv)[1] == out
