import json

import pytest

from preproj.cli import main
from preproj.quiver import Quiver


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hilbert_corner_series(capsys):
    code, out, _ = run(capsys, "hilbert", "--catalog", "affine_a", "3",
                       "--degree", "8", "--format", "csv")
    assert code == 0
    rows = [l.split(",") for l in out.strip().splitlines()[1:]]
    dims = [int(r[1]) for r in rows]
    assert dims == [1, 0, 1, 2, 1, 2, 3, 2, 3]


def test_hilbert_free(capsys):
    code, out, _ = run(capsys, "hilbert", "--catalog", "free", "2",
                       "--degree", "5", "--format", "json", "--matrix")
    assert code == 0
    doc = json.loads(out)
    assert [r["matrix"][0][0] for r in doc] == [1, 4, 15, 56, 209, 780]


def test_hilbert_from_file(tmp_path, capsys):
    q = Quiver([0, 1], [(0, 0, 1)])
    f = tmp_path / "q.json"
    f.write_text(q.to_json())
    code, out, _ = run(capsys, "hilbert", "--file", str(f), "--white", "1",
                       "--degree", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc[0]["matrix"] == [[1, 0], [0, 1]]
    assert doc[1]["matrix"] == [[0, 1], [1, 0]]
    assert doc[2]["matrix"] == [[0, 0], [0, 1]]


def test_hh0_free2(capsys):
    code, out, _ = run(capsys, "hh0", "--catalog", "free", "2", "--degree", "6",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    tors = {r["degree"]: r["torsion"] for r in doc if r["torsion"]}
    assert tors == {4: ["2"], 6: ["3"]}


def test_hh0_affine_d(capsys):
    code, out, _ = run(capsys, "hh0", "--catalog", "affine_d", "4",
                       "--degree", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    tors = {r["degree"]: r["torsion"] for r in doc if r["torsion"]}
    assert tors == {4: ["2"]}


def test_groebner_expect_match(capsys):
    from importlib import resources

    path = resources.files("preproj.data").joinpath("e7_groebner.txt")
    code, out, err = run(capsys, "groebner", "--star", "3", "3", "1",
                         "--degree", "12", "--expect", str(path))
    assert code == 0
    assert "matches expected listing" in err


def test_groebner_expect_mismatch(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("x\n")
    code, out, err = run(capsys, "groebner", "--star", "2", "2", "2",
                         "--degree", "12", "--expect", str(bad))
    assert code == 1
    assert "MISMATCH" in err


def test_necklace_bracket(capsys):
    code, out, _ = run(capsys, "necklace", "--catalog", "free", "1",
                       "--op", "bracket", "--left", "[x]", "--right", "[x*]")
    assert code == 0
    assert out.strip() == "[e_0]"


def test_hp0_command(capsys):
    code, out, _ = run(capsys, "hp0", "--type", "E6", "--modulus", "0",
                       "--degree", "24", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    live = {r["degree"]: r["dim"] for r in doc if r["dim"]}
    assert live == {0: 1, 6: 1, 8: 1, 12: 1, 14: 1, 20: 1}


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--only", "w_lattice")
    assert code == 0
    assert "PASS" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "groebner_e_types",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc[0]["criterion"] == "groebner_e_types" and doc[0]["ok"]


def test_usage_error(capsys):
    code, _, err = run(capsys, "hilbert", "--degree", "4")
    assert code == 2
    assert "error" in err


def test_bad_quiver_file(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"vertices": [0, 1], "arrows": []}))
    code, _, err = run(capsys, "hilbert", "--file", str(f), "--degree", "4")
    assert code == 2  # disconnected quivers are rejected


def test_hh0_json_generators(capsys):
    code, out, _ = run(capsys, "hh0", "--catalog", "free", "2", "--degree", "4",
                       "--show-generators", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    row4 = next(r for r in doc if r["degree"] == 4)
    assert row4["torsion"] == ["2"]
    assert any("r^(2^1)" in g for g in row4["generators"])


def test_necklace_cobracket_and_loday(capsys):
    code, out, _ = run(capsys, "necklace", "--catalog", "free", "2",
                       "--op", "cobracket", "--left", "[x1 x1* x2]")
    assert code == 0
    assert "^" in out  # a wedge term survives
    code, out, _ = run(capsys, "necklace", "--catalog", "free", "1",
                       "--op", "loday", "--left", "[x]", "--right", "x* x*")
    assert code == 0
    assert out.strip() == "2*x*"


def test_hp0_type_a_cli(capsys):
    code, out, _ = run(capsys, "hp0", "--type", "A", "--branch", "3",
                       "--degree", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc[0]["dim"] == 1


def test_groebner_preprojective_listing(capsys):
    code, out, _ = run(capsys, "groebner", "--catalog", "affine_a", "3",
                       "--degree", "6")
    assert code == 0
    assert len(out.strip().splitlines()) >= 3
