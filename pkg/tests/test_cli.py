import json

import pytest

from knotlift.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ac_exit_codes(capsys):
    assert run(capsys, "ac", "trefoil")[0] == 0
    code, out, _ = run(capsys, "ac", "virtual_trefoil", "-m", "0")
    assert code == 1 and "no integral numbering" in out
    assert run(capsys, "ac", "virtual_trefoil", "-m", "2")[0] == 1
    assert run(capsys, "ac", "m3", "-m", "3")[0] == 0
    assert run(capsys, "ac", "m3", "-m", "2")[0] == 1


def test_missing_file(capsys):
    code, _, err = run(capsys, "degree", "no_such_thing.kd")
    assert code == 2 and "no such file" in err


def test_invalid_file(tmp_path, capsys):
    p = tmp_path / "bad.kd"
    p.write_text("X c1 sign=+ uin=e1 oin=e2 uout=e3 oout=e4\n")
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1 and "violations" in out


def test_degree_and_heights(capsys):
    code, out, _ = run(capsys, "degree", str(FIXTURES / "d2.kd"), "--json")
    assert code == 0 and json.loads(out)["degree"] == 3
    code, out, _ = run(capsys, "heights", "heights0", "--base", "t1", "--json")
    assert code == 0
    assert run(capsys, "heights", "heights0")[0] == 2


def test_lift_and_cover(capsys):
    code, out, _ = run(capsys, "lift", "heights0", "--json")
    assert code == 0 and "diagram" in json.loads(out)
    code, out, _ = run(capsys, "cover", "heights0", "-m", "2", "--json")
    assert code == 0 and json.loads(out)["sheets"] == 2


def test_cutsys(capsys):
    code, out, _ = run(capsys, "cutsys", "check", "trefoil_cuts", "--json")
    assert code == 0 and json.loads(out)["cut_system"] is True
    code, out, _ = run(capsys, "cutsys", "standard", "virtual_trefoil", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["coherent"] == rep["incoherent"] == 1
    assert run(capsys, "cutsys", "move", "trefoil", "--kind", "bogus")[0] == 2


def test_moves(capsys):
    code, out, _ = run(capsys, "moves", "list", "trefoil", "--kind", "R1+", "--json")
    assert code == 0 and json.loads(out)["sites"]
    code, out, _ = run(capsys, "moves", "random-walk", "trefoil", "--steps", "3", "--json")
    assert code == 0 and len(json.loads(out)["moves"]) == 3
    assert run(capsys, "moves", "list", "trefoil", "--kind", "R9")[0] == 2


def test_verify_and_suite(capsys):
    assert run(capsys, "verify-theorem", "trefoil_cuts", "-m", "3")[0] == 0
    code, out, _ = run(capsys, "random-suite", "--trials", "5", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["runs"] == 20 and not rep["failures"]


def test_report(capsys):
    code, out, _ = run(capsys, "report", "unknot", "--json")
    assert code == 0 and json.loads(out)["components"] == 1


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["ac", "trefoil", "-m", "x"])
