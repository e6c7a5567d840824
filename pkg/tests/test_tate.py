import json

import pytest

from src.errors import DegreeOutsideWindow
from src.hopf import adjoint_module, counit_kernel_module, trivial_module
from src.tate import (
    CohomologyTable,
    classical_ext,
    classical_hochschild,
    cohomology_from_resolution,
    resolution_table,
    spliced_complete_resolution,
    tate_cohomology,
    tate_ext,
    tate_hochschild,
)

EVEN_ONLY = {n: 1 if n % 2 == 0 else 0 for n in range(-4, 5)}
ODD_ONLY = {n: 1 if n % 2 else 0 for n in range(-4, 5)}


def test_sweedler_trivial_coefficients(h4):
    k = trivial_module(h4)
    assert tate_cohomology(h4, k, -4, 4).dims() == EVEN_ONLY


def test_engines_and_methods_agree(h4):
    k = trivial_module(h4)
    minimal = tate_cohomology(h4, k, -3, 3, "minimal")
    free = tate_cohomology(h4, k, -3, 3, "free")
    hull = tate_cohomology(h4, k, -3, 3, "minimal", method="hull")
    assert minimal.mismatches(free) == []
    assert minimal.mismatches(hull) == []


def test_sweedler_adjoint_and_counit_kernel(h4):
    kern = tate_cohomology(h4, counit_kernel_module(h4), -4, 4).dims()
    adj = tate_cohomology(h4, adjoint_module(h4), -4, 4).dims()
    assert kern == ODD_ONLY
    assert adj == {n: 1 for n in range(-4, 5)}


def test_taft_trivial_coefficients(taft3):
    k = trivial_module(taft3)
    assert tate_cohomology(taft3, k, -3, 3).dims() == {n: EVEN_ONLY[n] for n in range(-3, 4)}


def test_group_algebra_in_modular_characteristic(f2z2):
    k = trivial_module(f2z2)
    assert tate_cohomology(f2z2, k, -3, 3).dims() == {n: 1 for n in range(-3, 4)}


def test_semisimple_vanishes(qz3):
    k = trivial_module(qz3)
    assert tate_cohomology(qz3, k, -2, 2).dims() == {n: 0 for n in range(-2, 3)}


@pytest.mark.slow
def test_sweedler_hochschild(h4):
    assert tate_hochschild(h4, -2, 2).dims() == {n: 1 for n in range(-2, 3)}


@pytest.mark.slow
def test_f2z2_hochschild(f2z2):
    assert tate_hochschild(f2z2, -2, 2).dims() == {n: 2 for n in range(-2, 3)}


def test_classes_are_module_maps(h4):
    k = trivial_module(h4)
    dim, classes = tate_ext(k, k, 2)
    assert dim == len(classes) == 1
    assert classes[0].degree == 2
    assert classes[0].representative.is_intertwiner()


def test_classical_ext(h4):
    k = trivial_module(h4)
    assert [classical_ext(k, k, n) for n in range(0, 5)] == [1, 0, 1, 0, 1]
    with pytest.raises(DegreeOutsideWindow):
        classical_ext(k, k, -1)


@pytest.mark.slow
def test_classical_hochschild_degree_one(f2z2):
    # derivations t ↦ a + bt of F2[t]/(t²)
    assert classical_hochschild(f2z2, 1) == 2


def test_spliced_resolution(h4):
    res = spliced_complete_resolution(h4, length=3)
    assert res.window == (-3, 2)
    assert all(term.dim == 2 for term in res.terms.values())
    assert sorted(res.terms) == list(range(-4, 4))
    k = trivial_module(h4)
    assert [cohomology_from_resolution(res, k, n) for n in range(-3, 3)] == [0, 1, 0, 1, 0, 1]
    with pytest.raises(DegreeOutsideWindow):
        cohomology_from_resolution(res, k, 3)


def test_resolution_table_matches_stable_engine(h4):
    k = trivial_module(h4)
    spliced = resolution_table(h4, k, -2, 2)
    assert spliced.engine == "spliced"
    assert spliced.mismatches(tate_cohomology(h4, k, -2, 2)) == []


def test_table_access_and_json(h4):
    table = tate_cohomology(h4, trivial_module(h4), -1, 1)
    assert table.dim(0) == 1
    with pytest.raises(DegreeOutsideWindow):
        table.dim(5)
    data = json.loads(table.to_json(representatives=True))
    assert [row["dim"] for row in data["rows"]] == [0, 1, 0]
    assert len(data["rows"][1]["representatives"]) == 1
    assert data["rows"][0]["representatives"] == []
    assert "  0  1" in table.to_text()


def test_mismatches_only_compare_shared_degrees():
    a = CohomologyTable(label="a", lo=0, hi=1)
    b = CohomologyTable(label="b", lo=1, hi=2)
    a.add(0, 1)
    a.add(1, 0)
    b.add(1, 1)
    b.add(2, 5)
    assert a.mismatches(b) == [1]


@pytest.mark.slow
def test_taft_hochschild(taft3):
    assert tate_hochschild(taft3, -3, 3).dims() == {n: 1 for n in range(-3, 4)}
