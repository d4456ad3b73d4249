import json

import pytest

from fibdiff.cli import main


def test_search(capsys):
    assert main(["search", "--nmax", "50"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 16 and lines[0] == "(1, 0, 0)"


def test_cf(capsys):
    assert main(["cf", "--terms", "5"]) == 0
    out = capsys.readouterr().out
    assert "4\t2\t36\t25" in out


def test_prove_and_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert main(["prove", "--nmax", "200", "--precision", "256", "--out", str(path)]) == 0
    assert set(json.loads(path.read_text())) == {"stages", "conclusion", "metadata"}
    assert main(["verify", str(path)]) == 0
    data = json.loads(path.read_text())
    data["conclusion"][0] = [1, 0, 1]
    path.write_text(json.dumps(data))
    assert main(["verify", str(path)]) == 1
    assert "violation" in capsys.readouterr().out


def test_prove_failure_exit_code(tmp_path):
    assert main(["prove", "--nmax", "60", "--out", str(tmp_path / "c.json")]) == 1


def test_reduce_degenerate_shift(capsys):
    assert main(["reduce", "--stage", "2", "--shift", "4"]) == 0
    out = capsys.readouterr().out
    assert "degenerate" in out and "alpha^2" in out


def test_reduce_stage_one(capsys):
    assert main(["reduce", "--stage", "1"]) == 0
    assert "w_bound = " in capsys.readouterr().out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["search"], ["reduce", "--stage", "3"],
                                  ["reduce", "--stage", "2"], ["cf", "--terms", "0"],
                                  ["prove", "--precision", "16"], ["cf", "--terms", "501"]])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_verify_missing_file(tmp_path):
    assert main(["verify", str(tmp_path / "none.json")]) == 1
