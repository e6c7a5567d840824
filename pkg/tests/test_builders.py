import pytest

from app.builders import (
    BUILTINS,
    build_example,
    builtin_names,
    cyclic_group_algebra,
    dual_numbers,
    sweedler,
    taft,
    taft_label,
)
from src.errors import BadCharacteristic, NoPrimitiveRoot
from src.hopf import HopfAlgebra, validate_hopf


def test_taft_labels():
    assert taft_label(0, 0) == "1"
    assert taft_label(2, 1) == "g^2x"
    assert taft_label(1, 2) == "gx^2"


def test_taft_basis_order(Q3):
    hopf = taft(3, Q3)
    assert hopf.dim == 9
    assert hopf.labels[:4] == ["1", "g", "g^2", "x"]
    assert hopf.labels[-1] == "g^2x^2"


def test_taft_hypotheses(Q, F2):
    with pytest.raises(ValueError):
        taft(1, Q)
    with pytest.raises(BadCharacteristic):
        sweedler(F2)
    with pytest.raises(NoPrimitiveRoot):
        taft(3, Q)


def test_group_algebra(F7):
    hopf = cyclic_group_algebra(3, F7)
    assert hopf.labels == ["1", "g", "g^2"]
    assert validate_hopf(hopf).ok


def test_dual_numbers(Q, F2):
    plain = dual_numbers(Q)
    assert not isinstance(plain, HopfAlgebra)
    assert plain.labels == ["1", "t"]
    with pytest.raises(BadCharacteristic):
        dual_numbers(Q, hopf=True)
    assert validate_hopf(dual_numbers(F2, hopf=True)).ok


def test_builtin_registry():
    assert builtin_names() == sorted(BUILTINS)
    assert "sweedler" in builtin_names()
    assert build_example("sweedler").labels == ["1", "g", "x", "gx"]
    with pytest.raises(KeyError):
        build_example("nope")
