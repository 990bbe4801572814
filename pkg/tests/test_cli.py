import io
import json

import pytest

from fringetrees.cli import main
from fringetrees.tree import parse_tree


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_sample_one_line():
    code, out = run(["sample", "--family", "plane", "--n", "100", "--seed", "7"])
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1 and len(parse_tree(lines[0])) == 100


def test_sample_deterministic():
    a = run(["sample", "--family", "binary", "--n", "50", "--seed", "3", "--count", "3"])[1]
    b = run(["sample", "--family", "binary", "--n", "50", "--seed", "3", "--count", "3"])[1]
    assert a == b and len(a.splitlines()) == 3


def test_dag_from_file(tmp_path):
    f = tmp_path / "forest.txt"
    f.write_text("(()(()))\n((())())\n")
    code, out = run(["dag", "--notion", "unordered", "--input", str(f)])
    assert code == 0
    rows = out.splitlines()[1:]
    assert [r.split(",")[3] for r in rows] == ["3", "3"]


def test_dag_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[0:[0:[1:[]] 1:[]] 1:[0:[] 1:[0:[]]]]\n"))
    code, out = run(["dag", "--notion", "asfamily", "--kind", "slotted:2", "--format", "json"])
    assert code == 0
    assert json.loads(out)[0]["dag_nodes"] == 6


def test_constants_row():
    code, out = run(["constants", "--id", "c5"])
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("id,value,error,published,method")
    assert row.startswith("c5,2.4071298335,")


def test_enumerate_probabilities():
    code, out = run(["enumerate", "--family", "bst", "--n", "3", "--notion", "plane", "--format", "json"])
    rows = json.loads(out)
    assert code == 0
    assert sum(r["float"] for r in rows) == pytest.approx(1.0)


def test_census_stdout():
    code, out = run(["census", "--family", "bst", "--sizes", "100,200", "--replicates", "2"])
    assert code == 0
    assert len(out.splitlines()) == 1 + 2 * 2 * 3


def test_compare_roundtrip(tmp_path):
    path = tmp_path / "c.csv"
    assert run(["census", "--family", "bst", "--sizes", "500", "--replicates", "2", "--output", str(path)])[0] == 0
    code, out = run(["compare", "--input", str(path), "--setting", "inc-family:bst"])
    assert code == 0 and "inc-family:bst" in out


@pytest.mark.parametrize("argv", [
    [],
    ["sample", "--family", "plane"],
    ["sample", "--family", "nope", "--n", "3"],
    ["sample", "--family", "fullbinary", "--n", "4"],
    ["constants", "--id", "c99"],
    ["compare", "--input", "/nonexistent", "--setting", "inc-family:bst"],
])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_dag_parse_error(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("(()\n"))
    assert run(["dag"])[0] == 2
