import json
import subprocess
import sys

import pytest

from hodgeshapley import game as gm
from hodgeshapley.cli import main


@pytest.fixture()
def glove_path(tmp_path):
    path = tmp_path / "glove.json"
    path.write_text(json.dumps(gm.game_to_spec(gm.make_glove_game())))
    return str(path)


@pytest.fixture()
def holdout_path(tmp_path):
    path = tmp_path / "holdout.json"
    path.write_text(json.dumps({"removed_coalitions": ["[1]"]}))
    return str(path)


def test_decompose_text(glove_path, capsys):
    assert main(["decompose", "--game", glove_path]) == 0
    out = capsys.readouterr().out
    assert "allocation: (2/3, 1/6, 1/6)" in out
    assert "5/12" in out


def test_decompose_deterministic(glove_path, capsys):
    main(["decompose", "--game", glove_path])
    first = capsys.readouterr().out
    main(["decompose", "--game", glove_path])
    assert capsys.readouterr().out == first


def test_decompose_with_constraints_and_weights(glove_path, holdout_path, capsys):
    code = main(["decompose", "--game", glove_path, "--constraints", holdout_path,
                 "--weights", "degree-product"])
    assert code == 0
    assert "allocation: (1/2, 1/4, 1/4)" in capsys.readouterr().out


def test_decompose_weight_shortcuts(glove_path, capsys):
    assert main(["decompose", "--game", glove_path, "--weights", "size-plus-one"]) == 0
    assert "16/31" in capsys.readouterr().out
    assert main(["decompose", "--game", glove_path, "--weights", "constant:2"]) == 0
    # constant weights cancel out of the solve
    assert "5/12" in capsys.readouterr().out


def test_weights_file(glove_path, tmp_path, capsys):
    wpath = tmp_path / "w.json"
    wpath.write_text(json.dumps(
        {"kind": "explicit", "entries": [{"base": "[]", "player": 0, "w": "1/2"}]}))
    assert main(["decompose", "--game", glove_path, "--weights", f"file:{wpath}"]) == 0
    assert "13/17" in capsys.readouterr().out


def test_constraints_file_weights(glove_path, tmp_path, capsys):
    cpath = tmp_path / "c.json"
    cpath.write_text(json.dumps(
        {"weights": {"kind": "by_cardinality", "values": ["1", "2", "3"]}}))
    assert main(["decompose", "--game", glove_path, "--constraints", str(cpath)]) == 0
    assert "16/31" in capsys.readouterr().out


def test_shapley_methods(glove_path, holdout_path, capsys):
    assert main(["shapley", "--game", glove_path, "--method", "direct"]) == 0
    assert capsys.readouterr().out.strip() == "(2/3, 1/6, 1/6)"
    assert main(["shapley", "--game", glove_path, "--method", "permutation"]) == 0
    assert capsys.readouterr().out.strip() == "(2/3, 1/6, 1/6)"
    assert main(["shapley", "--game", glove_path, "--method", "hodge"]) == 0
    assert capsys.readouterr().out.strip() == "(2/3, 1/6, 1/6)"
    assert main(["shapley", "--game", glove_path, "--constraints", holdout_path,
                 "--method", "precedence"]) == 0
    assert capsys.readouterr().out.strip() == "(1/2, 1/4, 1/4)"
    assert main(["shapley", "--game", glove_path, "--constraints", holdout_path,
                 "--method", "hodge"]) == 0
    assert capsys.readouterr().out.strip() == "(1/2, 3/10, 1/5)"


def test_shapley_json_format(glove_path, capsys):
    assert main(["shapley", "--game", glove_path, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["allocation"] == ["2/3", "1/6", "1/6"]


def test_compare_command(glove_path, holdout_path, capsys):
    assert main(["compare", "--game", glove_path, "--constraints", holdout_path]) == 0
    out = capsys.readouterr().out
    assert "precedence" in out and "3/10" in out


def test_verify_command(glove_path, capsys):
    assert main(["verify", "--game", glove_path]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") >= 3 and "FAIL" not in out


def test_verify_float_backend(glove_path, capsys):
    assert main(["verify", "--game", glove_path, "--backend", "cg"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_fixtures_command(capsys):
    assert main(["fixtures"]) == 0
    assert "6/6 tables reproduced" in capsys.readouterr().out


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["decompose", "--game", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    missing = tmp_path / "missing.json"
    assert main(["decompose", "--game", str(missing)]) == 2


def test_exit_code_invalid_values(tmp_path, capsys):
    bad = tmp_path / "bad_value.json"
    bad.write_text(json.dumps({"players": ["a"], "values": {"[0]": "1/0"}}))
    assert main(["decompose", "--game", str(bad)]) == 2


def test_exit_code_infeasible(glove_path, tmp_path, capsys):
    cpath = tmp_path / "c.json"
    cpath.write_text(json.dumps({"removed_coalitions": ["[0]", "[1]", "[2]"]}))
    assert main(["decompose", "--game", glove_path, "--constraints", str(cpath)]) == 3
    err = capsys.readouterr().err
    assert "error:" in err


def test_exit_code_non_convergence(glove_path, capsys):
    code = main(["decompose", "--game", glove_path, "--backend", "cg",
                 "--max-iters", "1"])
    assert code == 4
    assert "error:" in capsys.readouterr().err


def test_csv_format(glove_path, capsys):
    assert main(["decompose", "--game", glove_path, "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "coalition,v,v_1,v_2,v_3"
    assert len(lines) == 9


def test_module_entry_point(glove_path):
    proc = subprocess.run([sys.executable, "-m", "hodgeshapley", "shapley",
                           "--game", glove_path],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(2/3, 1/6, 1/6)"
