"""
Tate cohomology and Tate-Hochschild cohomology in every integer degree.

The stable engine reads Êxtⁿ(M, N) as stable Hom from Ωⁿ(M) to N. The
spliced engine builds a complete resolution of k from a projective
resolution and its Hopf dual, then takes homology of the Hom complex.
"""

import json
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, PrivateAttr

from src.errors import DegreeOutsideWindow, ExactnessFailure
from src.hopf import HopfAlgebra, a_as_enveloping_module, trivial_module
from src.linalg import Matrix, rank, span_basis
from src.modrep import (
    Engine,
    Module,
    ModuleMap,
    hom_basis_vectors,
    hopf_dual_module,
    is_projective,
    stable_hom,
)
from src.tower import get_tower
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass
class TateClass:
    """
    A class of Êxtⁿ(M, N) represented by a stable map Ωⁿ(M) → N.

    When level is set the class lives in the shifted realization
    Ω^{n+level}(M) → Ω^{level}(M) used by the cup product.
    """

    degree: int
    representative: ModuleMap
    engine: str = "minimal"
    level: Optional[int] = None


class CohomologyRow(BaseModel):
    degree: int
    dim: int = Field(ge=0)
    representatives: Optional[List[List[List[str]]]] = None


class CohomologyTable(BaseModel):
    """Dimensions of one cohomology theory over a degree window, without gaps."""

    label: str
    lo: int
    hi: int
    engine: str = "minimal"
    rows: List[CohomologyRow] = Field(default_factory=list)
    _classes: Dict[int, List[TateClass]] = PrivateAttr(default_factory=dict)

    def add(self, degree: int, dim: int, classes: Optional[List[TateClass]] = None) -> None:
        self.rows.append(CohomologyRow(degree=degree, dim=dim))
        if classes is not None:
            self._classes[degree] = classes

    def dims(self) -> Dict[int, int]:
        return {row.degree: row.dim for row in self.rows}

    def dim(self, degree: int) -> int:
        dims = self.dims()
        if degree not in dims:
            raise DegreeOutsideWindow(f"degree {degree} not in [{self.lo}, {self.hi}]")
        return dims[degree]

    def classes(self, degree: int) -> List[TateClass]:
        return self._classes.get(degree, [])

    def mismatches(self, other: "CohomologyTable") -> List[int]:
        """Degrees present in both tables where the dimensions differ."""
        mine, theirs = self.dims(), other.dims()
        return [n for n in sorted(mine) if n in theirs and mine[n] != theirs[n]]

    def to_text(self) -> str:
        lines = [f"{self.label}  [{self.engine}]", f"{'n':>5}  dim"]
        for row in self.rows:
            lines.append(f"{row.degree:>5}  {row.dim}")
        return "\n".join(lines)

    def to_json(self, representatives: bool = False) -> str:
        data = self.model_dump(mode="json", exclude={"rows"})
        rows = []
        for row in self.rows:
            entry = {"degree": row.degree, "dim": row.dim}
            if representatives:
                entry["representatives"] = [c.representative.matrix.to_strings()
                                            for c in self.classes(row.degree)]
            rows.append(entry)
        data["rows"] = rows
        return json.dumps(data, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Stable engine
# ---------------------------------------------------------------------------

def tate_ext(source: Module, target: Module, n: int, engine: Engine = "minimal",
             method: str = "cover") -> Tuple[int, List[TateClass]]:
    """
    Êxtⁿ(M, N) as stable Hom from Ωⁿ(M) to N.

    Args:
        source: M
        target: N
        n: Any integer degree
        engine: Syzygy engine for the tower of M
        method: Stable Hom method ("cover" or "hull")

    Returns:
        Tuple of (dimension, basis classes)
    """
    shifted = get_tower(source, engine).module(n)
    sh = stable_hom(shifted, target, method, engine)
    classes = [TateClass(n, m, engine) for m in sh.maps()]
    logger.debug(f"Êxt^{n}({source.name}, {target.name}) has dimension {sh.dim}")
    return sh.dim, classes


def tate_cohomology(hopf: HopfAlgebra, module: Module, lo: int, hi: int,
                    engine: Engine = "minimal", method: str = "cover") -> CohomologyTable:
    """Ĥⁿ(A, M) = Êxtⁿ(k, M) for n in [lo, hi]."""
    k = trivial_module(hopf)
    table = CohomologyTable(label=f"Ĥ*({hopf.name}, {module.name})", lo=lo, hi=hi, engine=engine)
    for n in range(lo, hi + 1):
        dim, classes = tate_ext(k, module, n, engine, method)
        table.add(n, dim, classes)
    logger.info(f"{table.label} [{engine}]: {[r.dim for r in table.rows]}")
    return table


def tate_hochschild(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal",
                    method: str = "cover") -> CohomologyTable:
    """ĤHⁿ(A, A) = Êxtⁿ over A^e of A by itself, for n in [lo, hi]."""
    a_mod = a_as_enveloping_module(hopf)
    table = CohomologyTable(label=f"ĤH*({hopf.name}, {hopf.name})", lo=lo, hi=hi, engine=engine)
    for n in range(lo, hi + 1):
        dim, classes = tate_ext(a_mod, a_mod, n, engine, method)
        table.add(n, dim, classes)
    logger.info(f"{table.label} [{engine}]: {[r.dim for r in table.rows]}")
    return table


# ---------------------------------------------------------------------------
# Classical Ext from a projective resolution
# ---------------------------------------------------------------------------

def resolution_differential(source: Module, n: int, engine: Engine) -> Matrix:
    """d_n: P_n → P_{n-1} of the (unstripped) resolution of source, n >= 1."""
    tower = get_tower(source, engine, strip=False)
    return tower.step(n - 1).inclusion @ tower.step(n).cover.epi.matrix


def hom_from_cover(cover, target: Module) -> List[Matrix]:
    """Basis of Hom(P, N) for P = ⊕ A·e_b: one map per basis vector of some e_b·N."""
    maps = []
    for b, block in enumerate(cover.blocks):
        for x in span_basis(target.field, target.act(block.idempotent).columns(), target.dim):
            images = [[target.field.zero] * target.dim for _ in cover.blocks]
            images[b] = x
            maps.append(cover.map_from_generators(target, images))
    return maps


def composition_rank(maps: List[Matrix], d: Matrix) -> int:
    if not maps:
        return 0
    return rank(Matrix.from_rows(d.field, [(f @ d).flatten() for f in maps],
                                 ncols=d.ncols * maps[0].nrows))


def classical_ext(source: Module, target: Module, n: int, engine: Engine = "minimal") -> int:
    """dim Extⁿ(M, N) as homology of Hom(P•, N) for n >= 0."""
    if n < 0:
        raise DegreeOutsideWindow("classical Ext lives in degrees n >= 0")
    tower = get_tower(source, engine, strip=False)
    hom_n = hom_from_cover(tower.step(n).cover, target)
    outgoing = composition_rank(hom_n, resolution_differential(source, n + 1, engine))
    incoming = 0
    if n >= 1:
        hom_prev = hom_from_cover(tower.step(n - 1).cover, target)
        incoming = composition_rank(hom_prev, resolution_differential(source, n, engine))
    return len(hom_n) - outgoing - incoming


def classical_hochschild(hopf: HopfAlgebra, n: int, engine: Engine = "minimal") -> int:
    """dim HHⁿ(A, A) = dim Extⁿ over A^e of A by A."""
    a_mod = a_as_enveloping_module(hopf)
    return classical_ext(a_mod, a_mod, n, engine)


# ---------------------------------------------------------------------------
# Spliced complete resolution
# ---------------------------------------------------------------------------

@dataclass
class CompleteResolution:
    """
    Projectives P_i and differentials d_i: P_i → P_{i-1} for i in [-L, L].

    P_i for i >= 0 resolve k; P_{-i-1} is the Hopf dual of P_i; d_0 is the
    splice Dε ∘ ε.
    """

    hopf: HopfAlgebra
    length: int
    terms: Dict[int, Module] = dc_field(default_factory=dict)
    differentials: Dict[int, Matrix] = dc_field(default_factory=dict)
    augmentation: Optional[Matrix] = None
    splice: Optional[Matrix] = None

    @property
    def window(self) -> Tuple[int, int]:
        """Degrees where cohomology of Hom(P, M) is defined by the stored terms."""
        return -self.length, self.length - 1


def spliced_complete_resolution(hopf: HopfAlgebra, length: int = 4,
                                certify_projective: bool = True) -> CompleteResolution:
    """
    Splice a minimal projective resolution of k with its Hopf dual.

    Args:
        hopf: Hopf algebra
        length: L; terms P_{-L-1} .. P_L are built
        certify_projective: run is_projective on every term

    Raises:
        ExactnessFailure: d∘d != 0 or ker != im at some degree in the window
    """
    k = trivial_module(hopf)
    tower = get_tower(k, "minimal", strip=False)
    res = CompleteResolution(hopf, length)
    for i in range(length + 1):
        res.terms[i] = tower.step(i).cover.module
        res.terms[-i - 1] = hopf_dual_module(hopf, res.terms[i])
    for i in range(1, length + 1):
        d = tower.step(i - 1).inclusion @ tower.step(i).cover.epi.matrix
        res.differentials[i] = d
        res.differentials[-i] = d.transpose()
    eps = tower.step(0).cover.epi.matrix
    res.augmentation = eps
    res.splice = eps.transpose() @ eps
    res.differentials[0] = res.splice

    for i in range(-length, length):
        upper, lower = res.differentials[i + 1], res.differentials[i]
        if not (lower @ upper).is_zero():
            raise ExactnessFailure(i, "d∘d != 0")
        kernel_dim = res.terms[i].dim - rank(lower)
        if kernel_dim != rank(upper):
            raise ExactnessFailure(i, f"ker has dimension {kernel_dim}, im has {rank(upper)}")
    for i in range(-length, length + 1):
        d = res.differentials[i]
        if not ModuleMap(res.terms[i], res.terms[i - 1], d).is_intertwiner():
            raise ExactnessFailure(i, "differential is not a module map")
    if certify_projective:
        for i, term in res.terms.items():
            ok, _ = is_projective(term)
            if not ok:
                raise ExactnessFailure(i, f"P_{i} is not projective")
    logger.info(f"complete resolution of k over {hopf.name}: "
                f"{[res.terms[i].dim for i in sorted(res.terms)]}")
    return res


def cohomology_from_resolution(res: CompleteResolution, module: Module, n: int) -> int:
    """
    dim Hⁿ(Hom(P, M)).

    Raises:
        DegreeOutsideWindow: n outside res.window
    """
    lo, hi = res.window
    if not lo <= n <= hi:
        raise DegreeOutsideWindow(f"degree {n} outside the resolution window [{lo}, {hi}]")
    field = module.field

    def hom(i: int) -> List[Matrix]:
        term = res.terms[i]
        return [Matrix.unflatten(field, v, module.dim, term.dim)
                for v in hom_basis_vectors(term, module)]

    hom_n = hom(n)
    outgoing = composition_rank(hom_n, res.differentials[n + 1])
    incoming = composition_rank(hom(n - 1), res.differentials[n])
    return len(hom_n) - outgoing - incoming


def resolution_table(hopf: HopfAlgebra, module: Module, lo: int, hi: int,
                     length: Optional[int] = None) -> CohomologyTable:
    """Tate cohomology table from the spliced engine."""
    length = length or max(abs(lo), abs(hi)) + 1
    res = spliced_complete_resolution(hopf, length, certify_projective=False)
    table = CohomologyTable(label=f"Ĥ*({hopf.name}, {module.name})", lo=lo, hi=hi, engine="spliced")
    for n in range(lo, hi + 1):
        table.add(n, cohomology_from_resolution(res, module, n))
    return table
