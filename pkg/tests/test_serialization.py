import json

import pytest
from pydantic import ValidationError

from app.builders import build_example
from app.models import AlgebraFile, JobConfig
from app.serialization import (
    algebra_to_file,
    dumps_algebra,
    dumps_module,
    load_algebra,
    loads_module,
    parse_algebra_text,
)
from app.utils import create_hash, fingerprint
from scripts.utils import DATA_DIR
from src.errors import ParseError
from src.hopf import HopfAlgebra, trivial_module

BUNDLED = sorted(DATA_DIR.glob("*.json"))


@pytest.mark.parametrize("path", BUNDLED, ids=lambda p: p.stem)
def test_bundled_files_are_canonical(path):
    assert dumps_algebra(load_algebra(path)) == path.read_text(encoding="utf-8")


def test_bundled_sweedler_matches_builder():
    from_file = load_algebra(DATA_DIR / "sweedler_q.json")
    assert isinstance(from_file, HopfAlgebra)
    assert dumps_algebra(from_file) == dumps_algebra(build_example("sweedler"))


def test_plain_algebra_has_no_hopf_keys():
    data = json.loads(dumps_algebra(build_example("sweedler").algebra))
    assert "coproduct" not in data
    assert not isinstance(parse_algebra_text(json.dumps(data)), HopfAlgebra)


def test_integers_are_accepted_as_scalars():
    spec = AlgebraFile(field={"kind": "rationals"}, basis=["1"], unit=[1], mult=[[[1, 0]]])
    assert spec.unit == ["1"]
    assert spec.mult == [[("1", 0)]]


@pytest.mark.parametrize("text", [
    "{not json",
    '{"field": {"kind": "rationals"}, "basis": ["1"], "mult": [[["1", 0]]]}',
    '{"field": {"kind": "rationals"}, "basis": ["1"], "unit": ["1"], "mult": [[["1", 3]]]}',
    '{"field": {"kind": "rationals"}, "basis": ["1"], "unit": ["1/0"], "mult": [[["1", 0]]]}',
    '{"field": {"kind": "rationals"}, "basis": ["1"], "unit": ["1"], "mult": [[["1", 0]]], "counit": ["1"]}',
    '{"field": {"kind": "rationals"}, "basis": ["1"], "unit": ["1"], "mult": [[["1", 0]]], "extra": 1}',
])
def test_bad_algebra_files(text):
    with pytest.raises(ParseError):
        parse_algebra_text(text)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_algebra(tmp_path / "missing.json")


def test_module_round_trip(h4):
    k = trivial_module(h4)
    again = loads_module(h4.algebra, dumps_module(k))
    assert again.dim == 1
    assert [m.to_strings() for m in again.action] == [m.to_strings() for m in k.action]


def test_module_action_count(h4):
    with pytest.raises(ParseError):
        loads_module(h4.algebra, '{"dim": 1, "action": [[["1"]]]}')
    with pytest.raises(ParseError):
        loads_module(h4.algebra, '{"dim": 2, "action": [[["1"]]]}')


def test_fingerprints(h4):
    assert len(create_hash("abc")) == 32
    assert fingerprint(algebra_to_file(h4)) == fingerprint(algebra_to_file(build_example("sweedler")))
    assert fingerprint(algebra_to_file(h4)) != fingerprint(algebra_to_file(build_example("taft3")))


def test_job_config():
    job = JobConfig(input="builtin:sweedler", command="tate", engine="both")
    assert job.engines == ["minimal", "free"]
    with pytest.raises(ValidationError):
        JobConfig(input="x", command="tate", lo=2, hi=1)
    with pytest.raises(ValidationError):
        JobConfig(input="x", command="tate", lo=-9, hi=0, cap=8)
