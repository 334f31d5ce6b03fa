import json
import subprocess
import sys

import pytest

from topocode.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_gen_then_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--p", "9", "--seed", "4", "--family", "edge-magic", "--k", "1", "--d", "2")
    assert code == 0
    g = write(tmp_path, "g.json", out["graph"])
    c = write(tmp_path, "c.json", out["coloring"])
    code, rep, _ = run(capsys, "verify", "--graph", g, "--coloring", c, "--k", "1", "--d", "2")
    assert code == 0 and rep["pass"]
    whole = write(tmp_path, "whole.json", out)
    assert run(capsys, "verify", "--graph", g, "--coloring", whole, "--k", "1", "--d", "2")[1] == rep


def test_verify_failure_exit_code(tmp_path, capsys):
    g = write(tmp_path, "g.json", {"p": 2, "edges": [[0, 1]]})
    c = write(tmp_path, "c.json", {"vertices": {"0": 0, "1": 5}, "edges": {"0-1": 2}})
    code, rep, _ = run(capsys, "verify", "--graph", g, "--coloring", c, "--family", "graceful", "--k", "1", "--d", "1")
    assert code == 1 and not rep["pass"]


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "--p", "10", "--seed", "7")[1]
    b = run(capsys, "gen", "--p", "10", "--seed", "7")[1]
    assert a == b


def test_string_of_matrix(tmp_path, capsys):
    m = write(tmp_path, "m.json", {"X": [1, 2], "E": [3, 14], "Y": [5, 6]})
    assert run(capsys, "string", "--matrix", m)[1]["string"] == "1231456"
    assert run(capsys, "string", "--matrix", m, "--order", "perm:5,4,3,2,1,0")[1]["string"] == "6514321"


def test_rebuild_and_partition(capsys):
    code, out, _ = run(capsys, "rebuild", "--string", "011", "--q", "1", "--budget", "1e6", "--no-graphs")
    assert code == 0 and out["solutions"][0]["matrix"] == {"X": [0], "E": [1], "Y": [1]}
    assert run(capsys, "partition", "--m", "10", "--k", "6")[1]["count"] == 35
    assert run(capsys, "pnbsp", "--string", "011", "--q", "1", "--no-graphs")[1] == out
    out = run(capsys, "partition", "--p", "12", "--seed", "2")[1]
    assert out["leaves"] == out["degree_formula"]


def test_matrix_ops(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"X": [7, 5], "E": [1, 3], "Y": [18, 18]})
    b = write(tmp_path, "b.json", {"X": [7], "E": [1], "Y": [18]})
    out = run(capsys, "matrix", "--op", "subtract", "--a", a, "--b", b)[1]
    assert out["matrix"] == {"X": [5], "E": [3], "Y": [18]}
    out = run(capsys, "matrix", "--op", "parameterize", "--a", b)[1]
    assert out["matrix"]["X"] == [[0, 7]]


def test_group_and_homo(tmp_path, capsys):
    base = write(tmp_path, "base.json", {"X": [1, 1, 1], "E": [3, 4, 5], "Y": [2, 3, 4]})
    code, fam, _ = run(capsys, "group", "--build", base, "--M", "4")
    assert code == 0 and len(fam["members"]) == 4
    path = write(tmp_path, "fam.json", fam)
    out = run(capsys, "group", "--family", path, "--op", "add", "--i", "1", "--j", "3", "--zero", "2")[1]
    assert out["index"] == 2
    t = write(tmp_path, "t.json", {"p": 3, "edges": [[0, 1], [1, 2]]})
    k2 = write(tmp_path, "k2.json", {"p": 2, "edges": [[0, 1]]})
    ok = write(tmp_path, "ok.json", [0, 1, 0])
    bad = write(tmp_path, "bad.json", [0, 0, 1])
    assert run(capsys, "homo", "--from", t, "--to", k2, "--map", ok)[0] == 0
    assert run(capsys, "homo", "--from", t, "--to", k2, "--map", bad)[0] == 1


def test_setcolor_and_peel(tmp_path, capsys):
    t = write(tmp_path, "t.json", {"p": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]]})
    code, out, _ = run(capsys, "setcolor", "--tree", t, "--variant", "ordered-path",
                       "--check", "adjacent-vertex-sets-differ,end-sets-meet",
                       "--hypergraph", "vertices")
    assert code == 0 and out["report"]["pass"] and out["hypergraph"]["edges"]
    code, out, _ = run(capsys, "setcolor", "--graph", t, "--variant", "graph")
    assert code == 0 and all(out["checks"].values())
    levels = run(capsys, "peel", "--tree", t)[1]["levels"]
    assert len(levels) == 2 and levels[-1]["removed"] == []


def test_library_errors_exit_one(tmp_path, capsys):
    g = write(tmp_path, "c4.json", {"p": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]})
    code, out, err = run(capsys, "gen", "--tree", g)
    assert code == 1 and out is None and json.loads(err)["error"] == "not-a-tree"


def test_unknown_flag_exits_two():
    proc = subprocess.run([sys.executable, "-m", "topocode.cli", "gen", "--bogus"], capture_output=True)
    assert proc.returncode == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--k", "x"])
    assert exc.value.code == 2
