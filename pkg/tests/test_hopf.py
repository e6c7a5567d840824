import pytest

from app.builders import build_example, builtin_names
from src.algcore import Algebra
from src.hopf import (
    HopfAlgebra,
    NotFinite,
    a_as_enveloping_module,
    adjoint_module,
    adjoint_splitting,
    antipode_order,
    counit_functional,
    counit_kernel_module,
    integrals,
    left_hit,
    modular_function,
    nakayama_inverse,
    nakayama_square,
    nakayama_via_frobenius,
    nakayama_via_modular,
    right_hit,
    sigma_embedding,
    trivial_module,
    twisted_module,
    validate_hopf,
)
from src.linalg import Matrix, is_invertible, rank
from src.modrep import validate_module


@pytest.mark.parametrize("name", builtin_names())
def test_builtins_satisfy_hopf_axioms(name):
    obj = build_example(name)
    assert isinstance(obj, HopfAlgebra)
    report = validate_hopf(obj)
    assert report.ok, report.summary()


def test_wrong_antipode_is_reported(h4):
    broken = HopfAlgebra(h4.algebra, h4.coproduct, h4.counit, Matrix.identity(h4.field, 4), name="broken")
    report = validate_hopf(broken)
    assert not report.ok
    assert any(v.axiom.startswith("antipode") for v in report.violations)


def test_antipode_orders(h4, taft3, qz3, f2z2):
    assert antipode_order(h4) == 4
    assert antipode_order(taft3) == 6
    assert antipode_order(qz3) == 2
    assert antipode_order(f2z2) == 1
    assert antipode_order(h4, bound=3) == NotFinite(3)


def test_sweedler_integrals(h4):
    (left,) = integrals(h4, "left")
    (right,) = integrals(h4, "right")
    assert not left[0] and not left[1] and left[2] == left[3] != 0
    assert not right[0] and not right[1] and right[2] == -right[3] != 0


def test_group_algebra_integral(qz3):
    (t,) = integrals(qz3, "left")
    assert t[0] == t[1] == t[2] != 0


def test_sweedler_modular_function(h4):
    alpha = modular_function(h4)
    assert alpha.coords == [1, -1, 0, 0]
    assert alpha * alpha == counit_functional(h4)
    assert alpha.format() == "1↦1, g↦-1, x↦0, gx↦0"


def test_taft_modular_function(taft3):
    alpha = modular_function(taft3)
    assert alpha.value(1) == taft3.field.generator()


def test_sweedler_nakayama(h4):
    nu = nakayama_via_modular(h4)
    assert nu.order == 2
    assert nu.matrix.column(1) == [0, -1, 0, 0]
    assert nu.matrix.column(2) == [0, 0, -1, 0]
    assert nu.matrix.column(3) == [0, 0, 0, 1]
    assert (nakayama_inverse(h4) @ nu.matrix).is_identity()
    assert nakayama_square(h4)[1]


def test_taft_nakayama_square_not_identity(taft3):
    square, involutive = nakayama_square(taft3)
    assert not involutive
    assert not square.is_identity()


def test_nakayama_from_frobenius_form(h4):
    nu = nakayama_via_frobenius(h4)
    assert is_invertible(nu)


def test_twisted_trivial_is_sign(h4):
    k = trivial_module(h4)
    twisted = twisted_module(k, nakayama_inverse(h4))
    assert twisted.action[1].rows[0][0] == -1
    assert validate_module(twisted).ok


def test_adjoint_module_splits(h4, taft3):
    for hopf in (h4, taft3):
        adj = adjoint_module(hopf)
        assert validate_module(adj).ok
        assert counit_kernel_module(hopf).dim == hopf.dim - 1
        iso = adjoint_splitting(hopf)
        assert is_invertible(iso.matrix)


def test_sigma_embedding(h4):
    sigma = sigma_embedding(h4)
    assert sigma.shape == (16, 4)
    assert rank(sigma) == 4


def test_algebra_as_enveloping_module(h4):
    module = a_as_enveloping_module(h4)
    assert module.dim == 4
    assert validate_module(module).ok


def test_non_hopf_algebra_is_plain(Q):
    from app.builders import dual_numbers

    alg = dual_numbers(Q)
    assert isinstance(alg, Algebra)


def test_hit_actions(h4):
    one, zero = h4.field.one, h4.field.zero
    g = [zero, one, zero, zero]
    eps = counit_functional(h4)
    alpha = modular_function(h4)
    assert right_hit(h4, g, eps) == g
    assert left_hit(h4, eps, g) == g
    assert right_hit(h4, g, alpha) == [zero, -one, zero, zero]
    assert left_hit(h4, alpha, g) == [zero, -one, zero, zero]
