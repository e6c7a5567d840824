import pytest

from src.algcore import regular_module
from src.checks import (
    CHECKS,
    check_additivity,
    check_degree_zero_bound,
    check_engine_agreement,
    check_induced_trivial,
    check_positive_agreement,
    check_shift_invariance,
    check_sigma_restriction_projective,
    check_tate_duality,
    check_theorem_iso,
    run_checks,
)
from src.hopf import counit_kernel_module, trivial_module


def test_duality_on_sweedler(h4):
    report = check_tate_duality(h4, -3, 3)
    assert report.status == "PASS"
    assert [row.values["dual_degree"] for row in report.rows] == [2, 1, 0, -1, -2, -3, -4]


def test_symmetry_skipped_when_nakayama_not_involutive(taft3):
    [report] = run_checks(taft3, "symmetry", -1, 1)
    assert report.status == "SKIP"
    assert report.passed
    assert report.rows == []


def test_unknown_check(h4):
    with pytest.raises(ValueError):
        run_checks(h4, "nonsense")


@pytest.mark.slow
def test_all_checks_pass_on_sweedler(h4):
    reports = run_checks(h4, "all", -2, 2)
    assert [r.name for r in reports] == [
        "positive_agreement", "theorem_iso", "summand_decomposition", "nu_symmetry", "tate_duality"]
    assert all(r.status == "PASS" for r in reports)
    assert len(reports) == len(CHECKS)


def test_positive_agreement_without_hochschild(h4, taft3):
    assert check_positive_agreement(h4, upto=3, hochschild=False).status == "PASS"
    assert check_positive_agreement(taft3, upto=2, hochschild=False).status == "PASS"


def test_degree_zero_bound(h4):
    report = check_degree_zero_bound(h4, regular_module(h4.algebra))
    assert report.passed
    assert report.rows[0].values == {"tate": 0, "invariants": 1}


def test_additivity_and_shift(h4):
    k = trivial_module(h4)
    assert check_additivity(h4, k, counit_kernel_module(h4), -2, 2).passed
    assert check_shift_invariance(h4, k, counit_kernel_module(h4), -2, 2).passed


def test_engine_agreement(h4, f2z2):
    assert check_engine_agreement(h4, -2, 2).status == "PASS"
    assert check_engine_agreement(f2z2, -2, 2, spliced=False).status == "PASS"


def test_structural_checks(h4):
    assert check_induced_trivial(h4).status == "PASS"
    report = check_sigma_restriction_projective(h4)
    assert report.passed
    assert report.rows[0].values["dim"] == 16


@pytest.mark.slow
def test_theorem_iso_on_taft(taft3):
    assert check_theorem_iso(taft3, -2, 2).status == "PASS"


@pytest.mark.slow
def test_positive_agreement_with_hochschild_on_taft(taft3):
    assert check_positive_agreement(taft3, upto=2, hochschild=True).status == "PASS"
