"""
Cup products on Ĥ*(A, k).

A class of degree n lives at level m >= max(0, -n) as a stable map
Ω^{n+m}(k) → Ω^m(k). Raising the level applies Ω, computed by lifting the
map through the covers of the tower. The product of a (degree i) and b
(degree j) is a ∘ Ω^i(b) at a common level, taken without extra signs.
"""

import threading
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.errors import DegreeOutsideWindow, MismatchError
from src.hopf import HopfAlgebra, trivial_module
from src.linalg import Matrix, Subspace, inverse, kernel_vectors, solve_columns
from src.modrep import Engine, ModuleMap, StableHom, lift_map, stable_hom
from src.tate import TateClass, composition_rank, hom_from_cover, resolution_differential
from src.tower import get_tower
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def canonical_level(degree: int) -> int:
    return max(0, -degree)


class TateRing:
    """The graded ring Ĥ*(A, k) with basis classes chosen per degree."""

    def __init__(self, hopf: HopfAlgebra, engine: Engine = "minimal"):
        self.hopf = hopf
        self.engine = engine
        self.trivial = trivial_module(hopf)
        self.tower = get_tower(self.trivial, engine)
        self._stable: Dict[Tuple[int, int], StableHom] = {}
        self._lock = threading.RLock()

    @property
    def field(self):
        return self.hopf.field

    def stable(self, degree: int, level: int) -> StableHom:
        """Stable Hom from Ω^{degree+level}(k) to Ω^{level}(k)."""
        if degree + level < 0 or level < 0:
            raise DegreeOutsideWindow(f"level {level} cannot carry degree {degree}")
        key = (degree, level)
        with self._lock:
            if key not in self._stable:
                self._stable[key] = stable_hom(self.tower.module(degree + level),
                                               self.tower.module(level), engine=self.engine)
            return self._stable[key]

    def dim(self, degree: int) -> int:
        return self.stable(degree, canonical_level(degree)).dim

    def basis(self, degree: int) -> List[TateClass]:
        level = canonical_level(degree)
        return [TateClass(degree, m, self.engine, level) for m in self.stable(degree, level).maps()]

    def identity(self) -> TateClass:
        k = self.tower.module(0)
        return TateClass(0, ModuleMap(k, k, Matrix.identity(self.field, k.dim)), self.engine, 0)

    def zero(self, degree: int) -> TateClass:
        level = canonical_level(degree)
        src, tgt = self.tower.module(degree + level), self.tower.module(level)
        return TateClass(degree, ModuleMap(src, tgt, Matrix.zeros(self.field, tgt.dim, src.dim)),
                         self.engine, level)

    # -- level changes --------------------------------------------------------

    def shift(self, cls: TateClass, steps: int = 1) -> TateClass:
        """Apply Ω to the representative `steps` times."""
        current = cls
        for _ in range(steps):
            top_level = current.degree + current.level
            _, omega = lift_map(current.representative, self.tower.step(top_level),
                                self.tower.step(current.level))
            current = TateClass(cls.degree, omega, self.engine, current.level + 1)
        return current

    def raise_to(self, cls: TateClass, level: int) -> TateClass:
        if level < cls.level:
            raise DegreeOutsideWindow(f"cannot lower a class from level {cls.level} to {level}")
        return self.shift(cls, level - cls.level)

    # -- coordinates ----------------------------------------------------------

    def coordinates(self, cls: TateClass) -> list:
        """Coordinates of a class on basis(degree)."""
        n, level = cls.degree, cls.level
        base = canonical_level(n)
        local = self.stable(n, level).coordinates(cls.representative.matrix.flatten())
        if level == base:
            return local
        shifted = [self.raise_to(b, level) for b in self.basis(n)]
        if not shifted:
            return []
        change = Matrix.from_columns(
            self.field,
            [self.stable(n, level).coordinates(b.representative.matrix.flatten()) for b in shifted],
            len(shifted),
        )
        return inverse(change).apply(local)

    def from_coordinates(self, degree: int, coords: list) -> TateClass:
        out = self.zero(degree)
        acc = out.representative.matrix
        for c, b in zip(coords, self.basis(degree)):
            if c:
                acc = acc + b.representative.matrix.scale(c)
        return TateClass(degree, ModuleMap(out.representative.source, out.representative.target, acc),
                         self.engine, out.level)

    def is_zero(self, cls: TateClass) -> bool:
        return self.stable(cls.degree, cls.level).is_zero(cls.representative.matrix.flatten())

    # -- product --------------------------------------------------------------

    def cup(self, a: TateClass, b: TateClass) -> TateClass:
        """a ⌣ b = a ∘ Ω^i(b), returned at the canonical level of degree i + j."""
        i, j = a.degree, b.degree
        level = max(a.level, b.level - i, -(i + j), 0)
        a_up = self.raise_to(a, level)
        b_up = self.raise_to(b, i + level)
        composite = a_up.representative.matrix @ b_up.representative.matrix
        product = TateClass(i + j, ModuleMap(b_up.representative.source, a_up.representative.target,
                                             composite), self.engine, level)
        return self.from_coordinates(i + j, self.coordinates(product))


_rings: Dict[Tuple[int, str], TateRing] = {}
_rings_lock = threading.Lock()


def get_ring(hopf: HopfAlgebra, engine: Engine = "minimal") -> TateRing:
    key = (id(hopf), engine)
    with _rings_lock:
        ring = _rings.get(key)
        if ring is None or ring.hopf is not hopf:
            ring = TateRing(hopf, engine)
            _rings[key] = ring
        return ring


def cup_product(ring: TateRing, a: TateClass, b: TateClass) -> TateClass:
    """Cup product of two classes of Ĥ*(A, k); both must carry a level."""
    if a.level is None or b.level is None:
        raise ValueError("cup products need classes from TateRing.basis")
    return ring.cup(a, b)


# ---------------------------------------------------------------------------
# Multiplication table
# ---------------------------------------------------------------------------

class ProductEntry(BaseModel):
    left_degree: int
    left_index: int
    right_degree: int
    right_index: int
    coordinates: List[str]


class RingTable(BaseModel):
    label: str
    lo: int
    hi: int
    dims: Dict[int, int] = Field(default_factory=dict)
    products: List[ProductEntry] = Field(default_factory=list)
    identity_ok: bool = True
    associativity_checked: int = 0
    associativity_failures: List[Tuple[int, int, int]] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity_ok and not self.associativity_failures

    def product(self, i: int, p: int, j: int, q: int) -> Optional[List[str]]:
        for e in self.products:
            if (e.left_degree, e.left_index, e.right_degree, e.right_index) == (i, p, j, q):
                return e.coordinates
        return None

    def to_text(self) -> str:
        lines = [self.label, "dims: " + ", ".join(f"{n}:{d}" for n, d in sorted(self.dims.items()))]
        for e in self.products:
            lines.append(f"  [{e.left_degree}.{e.left_index}] ⌣ [{e.right_degree}.{e.right_index}]"
                         f" = ({', '.join(e.coordinates)}) in degree {e.left_degree + e.right_degree}")
        lines.append(f"identity: {'ok' if self.identity_ok else 'FAILED'}; "
                     f"associativity: {self.associativity_checked} triples, "
                     f"{len(self.associativity_failures)} failures")
        return "\n".join(lines)


def ring_table(hopf: HopfAlgebra, lo: int, hi: int, engine: Engine = "minimal") -> RingTable:
    """
    Products of basis classes of Ĥ*(A, k) whose degrees and sum lie in [lo, hi].

    Identity and associativity are checked on every basis class and on every
    triple whose partial sums stay inside the window.
    """
    ring = get_ring(hopf, engine)
    fmt = ring.field.format
    table = RingTable(label=f"Ĥ*({hopf.name}, k) ring [{engine}]", lo=lo, hi=hi)
    bases = {n: ring.basis(n) for n in range(lo, hi + 1)}
    table.dims = {n: len(b) for n, b in bases.items()}
    products: Dict[Tuple[int, int, int, int], TateClass] = {}

    for i in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            if not lo <= i + j <= hi:
                continue
            for p, a in enumerate(bases[i]):
                for q, b in enumerate(bases[j]):
                    c = ring.cup(a, b)
                    products[(i, p, j, q)] = c
                    table.products.append(ProductEntry(
                        left_degree=i, left_index=p, right_degree=j, right_index=q,
                        coordinates=[fmt(x) for x in ring.coordinates(c)]))

    if lo <= 0 <= hi:
        one = ring.identity()
        for n, basis in bases.items():
            for a in basis:
                expect = ring.coordinates(a)
                left, right = ring.coordinates(ring.cup(one, a)), ring.coordinates(ring.cup(a, one))
                if left != expect or right != expect:
                    table.identity_ok = False
                    logger.warning(f"identity fails on a degree {n} class of {hopf.name}")

    for (i, p, j, q), ab in products.items():
        for k in range(lo, hi + 1):
            if not (lo <= j + k <= hi and lo <= i + j + k <= hi):
                continue
            for r, c in enumerate(bases[k]):
                left = ring.coordinates(ring.cup(ab, c))
                bc = products[(j, q, k, r)]
                right = ring.coordinates(ring.cup(bases[i][p], bc))
                table.associativity_checked += 1
                if left != right:
                    table.associativity_failures.append((i, j, k))
    logger.info(f"{table.label}: {len(table.products)} products, "
                f"{table.associativity_checked} associativity triples")
    return table


# ---------------------------------------------------------------------------
# Classical Yoneda products
# ---------------------------------------------------------------------------

class YonedaResolution:
    """
    Yoneda composition on the minimal projective resolution of k.

    A class of Extⁿ(k, k) is a cocycle P_n → k; the product of f (degree i)
    and g (degree j) is g ∘ F_j where F lifts f to a chain map P_{i+•} → P_•.
    """

    def __init__(self, hopf: HopfAlgebra):
        self.hopf = hopf
        self.trivial = trivial_module(hopf)
        self.tower = get_tower(self.trivial, "minimal", strip=False)

    @property
    def field(self):
        return self.hopf.field

    def term(self, n: int):
        return self.tower.step(n).cover

    def differential(self, n: int) -> Matrix:
        if n == 0:
            return self.tower.step(0).cover.epi.matrix
        return resolution_differential(self.trivial, n, "minimal")

    def cochains(self, n: int) -> List[Matrix]:
        return hom_from_cover(self.term(n), self.trivial)

    def _coboundaries(self, n: int) -> Subspace:
        length = self.trivial.dim * self.term(n).module.dim
        if n == 0:
            return Subspace(self.field, length)
        d = self.differential(n)
        return Subspace(self.field, length, [(f @ d).flatten() for f in self.cochains(n - 1)])

    def cocycle_classes(self, n: int) -> List[Matrix]:
        """Cocycles P_n → k whose classes form a basis of Extⁿ(k, k)."""
        d = self.differential(n + 1)
        cochains = self.cochains(n)
        if not cochains:
            return []
        ncols = len(cochains)
        rows_src = [(f @ d).flatten() for f in cochains]
        rows = [[v[r] for v in rows_src] for r in range(len(rows_src[0]))] if rows_src[0] else []

        cycles = []
        for coeffs in kernel_vectors(self.field, rows, ncols):
            acc = Matrix.zeros(self.field, self.trivial.dim, self.term(n).module.dim)
            for c, f in zip(coeffs, cochains):
                if c:
                    acc = acc + f.scale(c)
            cycles.append(acc)
        reps = self._coboundaries(n).complement_representatives([c.flatten() for c in cycles])
        expected = len(cochains) - composition_rank(cochains, d) - (
            composition_rank(self.cochains(n - 1), self.differential(n)) if n else 0)
        if len(reps) != expected:
            raise MismatchError(f"Ext^{n} basis has {len(reps)} classes, homology has {expected}")
        width = self.term(n).module.dim
        return [Matrix.unflatten(self.field, v, self.trivial.dim, width) for v in reps]

    def is_coboundary(self, cochain: Matrix, n: int) -> bool:
        return self._coboundaries(n).contains(cochain.flatten())

    def _lift(self, want: Matrix, source_index: int, target_index: int) -> Matrix:
        """F: P_source → P_target with d_target ∘ F = want (d_0 is the augmentation)."""
        source = self.term(source_index)
        target = self.term(target_index).module
        d = self.differential(target_index)
        images = []
        for b, block in enumerate(source.blocks):
            rhs = want.apply(source.generator_vector(b))
            y = solve_columns(self.field, d.rows, target.dim, [rhs])[0]
            images.append(target.act_on(block.idempotent, y))
        return source.map_from_generators(target, images)

    def product(self, f: Matrix, i: int, g: Matrix, j: int) -> Matrix:
        """Cocycle P_{i+j} → k representing the Yoneda product of f (degree i) with g (degree j)."""
        chain = self._lift(f, i, 0)
        for t in range(1, j + 1):
            chain = self._lift(chain @ self.differential(i + t), i + t, t)
        return g @ chain


def yoneda_product(hopf: HopfAlgebra, i: int, j: int, p: int = 0, q: int = 0) -> Tuple[Matrix, bool]:
    """
    Yoneda product of the p-th basis class of Extⁱ(k, k) with the q-th of Extʲ(k, k).

    Returns:
        Tuple of (cocycle P_{i+j} → k, whether its class is nonzero)
    """
    if i < 0 or j < 0:
        raise DegreeOutsideWindow("Yoneda products are defined here for degrees >= 0")
    res = YonedaResolution(hopf)
    f = res.cocycle_classes(i)[p]
    g = res.cocycle_classes(j)[q]
    h = res.product(f, i, g, j)
    return h, not res.is_coboundary(h, i + j)
