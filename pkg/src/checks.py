"""
Theorem and property checks over dimension tables.

Every check returns a CheckReport with one row per degree (or per case).
A FAIL row carries the values that disagree.
"""

from typing import Callable, Dict, List, Optional

from src.algcore import enveloping, regular_module
from src.errors import NotAutomorphism, TatecohError
from src.hopf import (
    HopfAlgebra,
    a_as_enveloping_module,
    adjoint_module,
    adjoint_splitting,
    counit_kernel_module,
    induced_module,
    nakayama_inverse,
    nakayama_square,
    sigma_embedding,
    trivial_module,
    twisted_module,
)
from src.modrep import (
    Engine,
    Module,
    direct_sum,
    hom_basis_vectors,
    is_projective,
    modules_isomorphic,
    restrict_module,
)
from src.reports import CheckReport
from src.tate import (
    classical_ext,
    classical_hochschild,
    resolution_table,
    tate_cohomology,
    tate_ext,
    tate_hochschild,
)
from src.tower import get_tower
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def check_positive_agreement(hopf: HopfAlgebra, module: Optional[Module] = None, upto: int = 4,
                             engine: Engine = "minimal", hochschild: bool = True) -> CheckReport:
    """
    Êxtⁿ = Extⁿ for 1 <= n <= upto, over A and (optionally) over A^e.

    Args:
        hopf: Hopf algebra
        module: Coefficients over A (trivial module when omitted)
        upto: Highest degree compared
        engine: Syzygy engine for the Tate side
        hochschild: Also compare ĤHⁿ with HHⁿ
    """
    report = CheckReport(name="positive_agreement")
    k = trivial_module(hopf)
    coeff = module if module is not None else k
    tate = tate_cohomology(hopf, coeff, 1, upto, engine).dims()
    for n in range(1, upto + 1):
        classical = classical_ext(k, coeff, n)
        report.add_row(n, tate[n] == classical, side="A", tate=tate[n], classical=classical)
    if hochschild:
        hh = tate_hochschild(hopf, 1, upto, engine).dims()
        for n in range(1, upto + 1):
            classical = classical_hochschild(hopf, n)
            report.add_row(n, hh[n] == classical, side="A^e", tate=hh[n], classical=classical)
    return report


def check_theorem_iso(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal") -> CheckReport:
    """dim ĤHⁿ(A, A) = dim Ĥⁿ(A, A^ad) for n in [lo, hi]."""
    report = CheckReport(name="theorem_iso")
    hh = tate_hochschild(hopf, lo, hi, engine).dims()
    adj = tate_cohomology(hopf, adjoint_module(hopf), lo, hi, engine).dims()
    for n in range(lo, hi + 1):
        report.add_row(n, hh[n] == adj[n], hochschild=hh[n], adjoint=adj[n])
    return report


def check_summand_decomposition(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal",
                                with_hochschild: bool = False) -> CheckReport:
    """
    dim Ĥⁿ(A, A^ad) = dim Ĥⁿ(A, k) + dim Êxtⁿ(k, Ker ε) using A^ad ≅ k ⊕ Ker ε.

    With with_hochschild, also checks dim Ĥⁿ(A, k) <= dim ĤHⁿ(A, A) for n > 0.
    """
    report = CheckReport(name="summand_decomposition")
    try:
        adjoint_splitting(hopf)
    except TatecohError as e:
        report.add_row(None, False, splitting=str(e))
        return report
    report.notes.append("A^ad ≅ k ⊕ Ker ε verified")
    adj = tate_cohomology(hopf, adjoint_module(hopf), lo, hi, engine).dims()
    triv = tate_cohomology(hopf, trivial_module(hopf), lo, hi, engine).dims()
    kern = tate_cohomology(hopf, counit_kernel_module(hopf), lo, hi, engine).dims()
    hh = tate_hochschild(hopf, lo, hi, engine).dims() if with_hochschild else {}
    for n in range(lo, hi + 1):
        ok = adj[n] == triv[n] + kern[n]
        values = dict(adjoint=adj[n], trivial=triv[n], counit_kernel=kern[n])
        if with_hochschild and n > 0:
            ok = ok and triv[n] <= hh[n]
            values["hochschild"] = hh[n]
        report.add_row(n, ok, **values)
    return report


def check_nu_symmetry(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal") -> CheckReport:
    """dim ĤHⁿ = dim ĤH^{-(n+1)} whenever ν² = id; skipped otherwise."""
    report = CheckReport(name="nu_symmetry")
    try:
        _, involutive = nakayama_square(hopf)
    except NotAutomorphism as e:
        return report.skip(f"Nakayama automorphism unavailable: {e}")
    if not involutive:
        return report.skip(f"ν² ≠ 1 for {hopf.name}; symmetry not asserted")
    lo_, hi_ = min(lo, -hi - 1), max(hi, -lo - 1)
    hh = tate_hochschild(hopf, lo_, hi_, engine).dims()
    for n in range(lo, hi + 1):
        mirror = -n - 1
        report.add_row(n, hh[n] == hh[mirror], dim=hh[n], mirror_degree=mirror, mirror_dim=hh[mirror])
    return report


def check_tate_duality(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal") -> CheckReport:
    """dim Ĥⁿ(A, k) = dim Êxt^{-n-1}(k, k_ν⁻¹), k_ν⁻¹ being the trivial module twisted by ν⁻¹."""
    report = CheckReport(name="tate_duality")
    k = trivial_module(hopf)
    twisted = twisted_module(k, nakayama_inverse(hopf), name="k_ν⁻¹")
    triv = tate_cohomology(hopf, k, lo, hi, engine).dims()
    for n in range(lo, hi + 1):
        dual, _ = tate_ext(k, twisted, -n - 1, engine)
        report.add_row(n, triv[n] == dual, dim=triv[n], dual_degree=-n - 1, dual_dim=dual)
    return report


def check_degree_zero_bound(hopf: HopfAlgebra, module: Module, engine: Engine = "minimal") -> CheckReport:
    """dim Ĥ⁰(A, M) <= dim Hom_A(k, M)."""
    report = CheckReport(name="degree_zero_bound")
    k = trivial_module(hopf)
    tate0, _ = tate_ext(k, module, 0, engine)
    invariants = len(hom_basis_vectors(k, module))
    report.add_row(0, tate0 <= invariants, tate=tate0, invariants=invariants)
    return report


def check_additivity(hopf: HopfAlgebra, first: Module, second: Module, lo: int, hi: int,
                     engine: Engine = "minimal") -> CheckReport:
    """Êxtⁿ is additive in both arguments (checked with k as the other argument)."""
    report = CheckReport(name="additivity")
    k = trivial_module(hopf)
    total = direct_sum(first, second)
    for n in range(lo, hi + 1):
        whole, _ = tate_ext(k, total, n, engine)
        a, _ = tate_ext(k, first, n, engine)
        b, _ = tate_ext(k, second, n, engine)
        report.add_row(n, whole == a + b, argument="second", whole=whole, parts=[a, b])
        whole, _ = tate_ext(total, k, n, engine)
        a, _ = tate_ext(first, k, n, engine)
        b, _ = tate_ext(second, k, n, engine)
        report.add_row(n, whole == a + b, argument="first", whole=whole, parts=[a, b])
    return report


def check_shift_invariance(hopf: HopfAlgebra, source: Module, target: Module, lo: int, hi: int,
                           engine: Engine = "minimal") -> CheckReport:
    """dim Êxtⁿ(M, N) = dim Êxt^{n-1}(ΩM, N)."""
    report = CheckReport(name="shift_invariance")
    omega = get_tower(source, engine).module(1)
    for n in range(lo, hi + 1):
        here, _ = tate_ext(source, target, n, engine)
        shifted, _ = tate_ext(omega, target, n - 1, engine)
        report.add_row(n, here == shifted, dim=here, shifted_dim=shifted)
    return report


def check_engine_agreement(hopf: HopfAlgebra, lo: int, hi: int, spliced: bool = True) -> CheckReport:
    """Minimal engine, free engine and the spliced resolution agree on Ĥⁿ(A, k)."""
    report = CheckReport(name="engine_agreement")
    k = trivial_module(hopf)
    minimal = tate_cohomology(hopf, k, lo, hi, "minimal").dims()
    free = tate_cohomology(hopf, k, lo, hi, "free").dims()
    resolution = resolution_table(hopf, k, lo, hi).dims() if spliced else {}
    for n in range(lo, hi + 1):
        values = dict(minimal=minimal[n], free=free[n])
        ok = minimal[n] == free[n]
        if spliced:
            values["spliced"] = resolution[n]
            ok = ok and resolution[n] == minimal[n]
        report.add_row(n, ok, **values)
    return report


def check_induced_trivial(hopf: HopfAlgebra) -> CheckReport:
    """A^e ⊗_A k ≅ A as A^e-modules."""
    report = CheckReport(name="induced_trivial_is_regular")
    induced = induced_module(hopf, trivial_module(hopf))
    target = a_as_enveloping_module(hopf)
    result = modules_isomorphic(induced, target)
    report.add_row(None, result.status == "isomorphic", induced_dim=induced.dim,
                   algebra_dim=target.dim, status=result.status)
    return report


def check_sigma_restriction_projective(hopf: HopfAlgebra) -> CheckReport:
    """A^e restricted along σ is a projective A-module."""
    report = CheckReport(name="enveloping_projective_over_sigma")
    env = enveloping(hopf.algebra)
    restricted = restrict_module(regular_module(env), sigma_embedding(hopf), hopf.algebra,
                                 name=f"{env.name}|σ")
    ok, _ = is_projective(restricted)
    report.add_row(None, ok, dim=restricted.dim)
    return report


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "positive": lambda h, lo, hi, engine: check_positive_agreement(h, upto=max(hi, 1), engine=engine),
    "theorem": lambda h, lo, hi, engine: check_theorem_iso(h, lo, hi, engine),
    "summand": lambda h, lo, hi, engine: check_summand_decomposition(h, lo, hi, engine),
    "symmetry": lambda h, lo, hi, engine: check_nu_symmetry(h, lo, hi, engine),
    "duality": lambda h, lo, hi, engine: check_tate_duality(h, lo, hi, engine),
}


def run_checks(hopf: HopfAlgebra, which: str = "all", lo: int = -2, hi: int = 2,
               engine: Engine = "minimal") -> List[CheckReport]:
    """Run one named check or all of them."""
    names = list(CHECKS) if which == "all" else [which]
    reports = []
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown check '{name}'")
        logger.info(f"running check {name} on {hopf.name} over [{lo}, {hi}]")
        reports.append(CHECKS[name](hopf, lo, hi, engine))
    return reports
