import json

import pytest

from app.builders import build_example
from app.serialization import dumps_algebra
from scripts.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_tate_text(capsys):
    code, out = run(capsys, "tate", "builtin:sweedler", "--from", "-2", "--to", "2")
    assert code == 0
    assert "Ĥ*(H4, k)" in out.out
    assert "   -2  1" in out.out


def test_tate_both_engines_json(capsys):
    code, out = run(capsys, "tate", "builtin:sweedler", "--from", "-2", "--to", "2",
                    "--engine", "both", "--format", "json")
    assert code == 0
    data = json.loads(out.out)
    assert data["engines_agree"] is True
    assert data["mismatched_degrees"] == []
    assert [t["engine"] for t in data["tables"]] == ["minimal", "free"]
    assert [r["dim"] for r in data["tables"][0]["rows"]] == [1, 0, 1, 0, 1]


def test_tate_with_bundled_file_and_module(capsys):
    code, out = run(capsys, "tate", "sweedler_q.json", "--module", "counit_kernel",
                    "--from", "0", "--to", "1", "--format", "json")
    assert code == 0
    assert [r["dim"] for r in json.loads(out.out)["tables"][0]["rows"]] == [0, 1]


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "builtin:sweedler")[0] == 0
    data = json.loads(dumps_algebra(build_example("sweedler")))
    data["antipode"] = [["1" if r == c else "0" for c in range(4)] for r in range(4)]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(data))
    code, out = run(capsys, "validate", str(broken))
    assert code == 1
    assert "❌" in out.out + out.err


def test_info_json(capsys):
    code, out = run(capsys, "info", "builtin:sweedler", "--format", "json")
    assert code == 0
    data = json.loads(out.out)
    assert data["dim"] == 4
    assert data["antipode_order"] == 4
    assert data["nakayama_order"] == 2
    assert data["nakayama_square_is_identity"] is True
    assert data["modular_function"] == {"1": "1", "g": "-1", "x": "0", "gx": "0"}


def test_symmetry_check_skips_on_taft(capsys):
    code, out = run(capsys, "check", "builtin:taft3", "--which", "symmetry", "--from", "-1", "--to", "1")
    assert code == 0
    assert "SKIP" in out.out


def test_cup_pair(capsys):
    code, out = run(capsys, "cup", "builtin:sweedler", "--i", "2", "--j", "-2", "--format", "json")
    assert code == 0
    data = json.loads(out.out)
    assert len(data["products"]) == 1
    assert data["products"][0]["degree"] == 0
    assert data["products"][0]["coordinates"] != ["0"]


@pytest.mark.parametrize("argv", [
    ["tate", "builtin:sweedler", "--from", "3", "--to", "1"],
    ["tate", "builtin:sweedler", "--from", "-20", "--to", "1"],
    ["tate", "builtin:nope"],
    ["tate", "missing.json"],
    ["frobnicate", "builtin:sweedler"],
    ["tate", "builtin:sweedler", "--engine", "fast"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_plain_algebra_is_rejected(capsys, tmp_path):
    plain = tmp_path / "plain.json"
    plain.write_text(dumps_algebra(build_example("sweedler").algebra))
    assert run(capsys, "info", str(plain))[0] == 2


@pytest.mark.slow
def test_hochschild(capsys):
    code, out = run(capsys, "hochschild", "builtin:kz2_f2", "--from", "-1", "--to", "1", "--format", "json")
    assert code == 0
    assert [r["dim"] for r in json.loads(out.out)["tables"][0]["rows"]] == [2, 2, 2]


def test_cache_is_written_and_closed_on_exit(capsys, tmp_path, monkeypatch):
    import src.database as database
    from src.tower import clear_towers

    clear_towers()
    monkeypatch.setenv("TATECOH_CACHE_DIR", str(tmp_path))
    code, _ = run(capsys, "tate", "builtin:sweedler", "--from", "-1", "--to", "1")
    assert code == 0
    assert (tmp_path / "towers.db").exists()
    assert database._db is None
    clear_towers()
