import json

import pytest

from cudiv.cli import main
from cudiv.core import load_model, three_point
from cudiv.euler import SetFamily


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_matrix_div(capsys):
    code, out, _ = run(capsys, "matrix-div", "--m", "3", "--k", "7")
    assert code == 0 and out.strip() == "Div_3(M_7) = 4"
    code, out, _ = run(capsys, "matrix-div", "--m", "3", "--k", "2", "--format", "records")
    assert json.loads(out) == {"k": 2, "m": 3, "value": "inf"}


def test_usage_errors(capsys):
    assert run(capsys, "matrix-div", "--m", "0", "--k", "3")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "villadsen", "--variant", "simple1", "--n", "2")[0] == 2


def test_analyze_model_file(tmp_path, capsys):
    path = write(tmp_path, "m.json", three_point().dumps())
    code, out, _ = run(capsys, "analyze", "--model", path, "--m", "2", "--format", "records")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["kind"] for r in recs] == ["Div", "Decomp", "WeakDiv", "Cov"]
    code, out2, _ = run(capsys, "analyze", "--model", path, "--m", "2", "--format", "records")
    assert out == out2
    code, out, _ = run(capsys, "analyze", "--model", path, "--m", "2", "--kind", "Div", "--u", "b")
    assert code == 0 and "u = b" in out


def test_analyze_malformed(tmp_path, capsys):
    assert run(capsys, "analyze", "--model", write(tmp_path, "x.json", "{nope"), "--m", "2")[0] == 3
    doc = json.loads(three_point().dumps())
    doc["add"][1][2] = 1  # breaks commutativity
    code, _, err = run(capsys, "analyze", "--model", write(tmp_path, "y.json", doc), "--m", "2")
    assert code == 3 and "commutative" in err
    assert run(capsys, "analyze", "--model", str(tmp_path / "missing.json"), "--m", "2")[0] == 3


def test_model_round_trip():
    m = three_point()
    assert load_model(m.dumps()).dumps() == m.dumps()


def test_hall_and_euler(tmp_path, capsys):
    good = write(tmp_path, "g.json", SetFamily(2, [({1, 2}, 2)]).to_record())
    bad = write(tmp_path, "b.json", SetFamily(2, [({1}, 2)]).to_record())
    code, out, _ = run(capsys, "hall", "--family", good)
    assert code == 0 and out.startswith("feasible")
    code, out, _ = run(capsys, "hall", "--family", bad)
    assert code == 1 and "union size 1 < 2" in out
    code, out, _ = run(capsys, "euler", "--family", good)
    assert code == 0 and "2*z1*z2" in out
    assert run(capsys, "euler", "--family", bad)[0] == 1
    assert run(capsys, "hall", "--family", write(tmp_path, "m.json", {"ground": 2}))[0] == 3


def test_hall_guard(tmp_path, capsys):
    path = write(tmp_path, "h.json", {"ground": 1, "members": [{"set": [1], "mult": 2**63}]})
    assert run(capsys, "hall", "--family", path)[0] == 4


def test_villadsen(capsys):
    code, out, _ = run(capsys, "villadsen", "--variant", "simple1", "--N", "2", "--n", "3")
    assert code == 0 and "(2, 10]" in out
    code, out, _ = run(capsys, "villadsen", "--variant", "simple2", "--n", "1", "--k", "2")
    assert code == 0 and "by rank" in out
    code, _, _ = run(capsys, "villadsen", "--variant", "inf_tensor", "--N", "1", "--n", "2", "--m", "2")
    assert code == 0
    assert run(capsys, "villadsen", "--variant", "simple2", "--n", "12")[0] == 4


def test_verify_suite_deterministic(capsys):
    code, a, _ = run(capsys, "verify-suite", "--seed", "3", "--filter", "matrix", "--format", "records")
    _, b, _ = run(capsys, "verify-suite", "--seed", "3", "--filter", "matrix", "--format", "records")
    assert code == 0 and a == b
    assert json.loads(a.splitlines()[0])["seed"] == 3
    assert run(capsys, "verify-suite", "--filter", "zzz")[0] == 2


@pytest.mark.parametrize("argv", [["--help"], ["matrix-div", "--help"]])
def test_help_exits_zero(capsys, argv):
    assert run(capsys, *argv)[0] == 0
