import pytest

from src.algcore import regular_module
from src.errors import NotSplitCommutative, ValidationFailed
from src.hopf import counit_kernel_module, trivial_module
from src.linalg import Matrix, kernel_vectors
from src.modrep import (
    ModuleMap,
    algebra_radical,
    cosyzygy,
    cover,
    direct_sum,
    free_module,
    generated_submodule,
    hom_space,
    is_projective,
    lift_map,
    modules_isomorphic,
    primitive_idempotents,
    projective_cover,
    radical_of_module,
    socle,
    stable_hom,
    strip_free_summands,
    submodule,
    syzygy,
    syzygy_data,
    top,
    validate_module,
)


def _sign_action(module):
    return module.action[1].rows[0][0]


def test_trivial_and_regular_modules_are_valid(h4):
    k = trivial_module(h4)
    assert validate_module(k).ok
    assert validate_module(regular_module(h4.algebra)).ok
    assert validate_module(direct_sum(k, k)).ok
    assert free_module(h4.algebra, 2).dim == 8
    assert free_module(h4.algebra, 0).dim == 0


def test_radicals(h4, qz3, f2z2):
    rad = algebra_radical(h4.algebra)
    assert len(rad) == 2
    assert all(not v[0] and not v[1] for v in rad)
    assert algebra_radical(qz3.algebra) == []
    assert algebra_radical(f2z2.algebra) == [[1, 1]]


def test_radical_socle_top_of_regular(h4):
    reg = regular_module(h4.algebra)
    assert radical_of_module(reg).source.dim == 2
    assert socle(reg).source.dim == 2
    assert top(reg).target.dim == 2


def test_principal_indecomposables(h4):
    data = primitive_idempotents(h4.algebra)
    assert len(data.idempotents) == 2
    assert [p.dim for p in data.pims] == [2, 2]
    alg = h4.algebra
    e, f = data.idempotents
    assert alg.multiply(e, e) == e
    assert not any(alg.multiply(e, f))


def test_split_commutative_required(qz3):
    k = trivial_module(qz3)
    with pytest.raises(NotSplitCommutative):
        projective_cover(k)
    # minimal engine falls back to free covers
    assert cover(k, "minimal").module.dim == 3


def test_projective_cover_of_trivial(h4):
    k = trivial_module(h4)
    cov = projective_cover(k)
    assert cov.module.dim == 2
    assert cov.epi.is_surjective()
    assert cov.epi.is_intertwiner()


def test_syzygies_of_trivial(h4):
    k = trivial_module(h4)
    omega = syzygy(k)
    assert omega.dim == 1
    assert _sign_action(omega) == -1
    assert modules_isomorphic(syzygy(omega), k)
    inverse = cosyzygy(k)
    assert inverse.dim == 1
    assert _sign_action(inverse) == -1


def test_free_engine_keeps_projective_summand(h4):
    k = trivial_module(h4)
    assert syzygy(k, "free", strip=False).dim == 3
    assert syzygy(k, "free", strip=True).dim == 3


def test_strip_free_summands(h4):
    k = trivial_module(h4)
    padded = direct_sum(regular_module(h4.algebra), k)
    assert strip_free_summands(padded).dim == 1


def test_projectivity(h4):
    assert is_projective(regular_module(h4.algebra))[0]
    ok, section = is_projective(trivial_module(h4))
    assert not ok
    assert section is None


def test_hom_spaces(h4):
    k = trivial_module(h4)
    reg = regular_module(h4.algebra)
    maps = hom_space(k, reg)
    assert len(maps) == 1
    assert maps[0].is_intertwiner()
    assert len(hom_space(k, syzygy(k))) == 0


def test_generated_submodule(h4):
    reg = regular_module(h4.algebra)
    inc = generated_submodule(reg, [h4.algebra.basis_vector(2)])
    assert inc.source.dim == 2
    with pytest.raises(ValidationFailed):
        submodule(reg, [h4.algebra.basis_vector(1)])


def test_stable_hom(h4):
    k = trivial_module(h4)
    for method in ("cover", "hull"):
        assert stable_hom(k, k, method).dim == 1
        assert stable_hom(k, syzygy(k), method).dim == 0
    reg = regular_module(h4.algebra)
    assert stable_hom(reg, reg).dim == 0


def test_isomorphism_results(h4):
    k = trivial_module(h4)
    result = modules_isomorphic(k, syzygy(k))
    assert result.status == "not_isomorphic"
    assert not result
    same = modules_isomorphic(k, trivial_module(h4))
    assert same.status == "isomorphic"
    assert same.require().matrix.shape == (1, 1)


def test_lift_map_commutes_with_covers(h4):
    k = trivial_module(h4)
    data = syzygy_data(k)
    phi = ModuleMap(k, k, Matrix.identity(h4.field, 1))
    lifted, omega = lift_map(phi, data, data)
    assert data.cover.epi.matrix @ lifted == phi.matrix @ data.cover.epi.matrix
    assert omega.is_intertwiner()


@pytest.mark.parametrize("name", ["h4", "taft3"])
def test_projective_cover_kernel_lies_in_radical(name, request):
    hopf = request.getfixturevalue(name)
    for module in (trivial_module(hopf), counit_kernel_module(hopf)):
        cov = projective_cover(module)
        epi = cov.epi.matrix
        kernel = kernel_vectors(epi.field, epi.rows, epi.ncols)
        assert len(kernel) == cov.module.dim - module.dim
        rad = radical_of_module(cov.module)
        assert all(rad.subspace.contains(v) for v in kernel)


@pytest.mark.parametrize("name", ["h4", "taft3"])
def test_syzygy_and_cosyzygy_are_inverse(name, request):
    hopf = request.getfixturevalue(name)
    k = trivial_module(hopf)
    module = direct_sum(k, syzygy(k))
    assert not is_projective(module)[0]
    assert modules_isomorphic(syzygy(cosyzygy(module)), module)
    assert modules_isomorphic(cosyzygy(syzygy(module)), module)


@pytest.mark.parametrize("name", ["h4", "taft3"])
def test_syzygy_round_trip_drops_projective_summands(name, request):
    hopf = request.getfixturevalue(name)
    k = trivial_module(hopf)
    back = cosyzygy(syzygy(counit_kernel_module(hopf)))
    assert back.dim == syzygy(k).dim
    assert modules_isomorphic(back, syzygy(k))
