"""
Representation theory of finite dimensional modules over an Algebra.

A left module is a list of action matrices, one per algebra basis element.
This module provides Hom spaces, radicals and tops, projective and free
covers, syzygies and cosyzygies, the stable Hom quotient and isomorphism
tests. Two syzygy engines are available:

- minimal: projective covers assembled from principal indecomposables
  (needs A/J split commutative, otherwise falls back to free)
- free: covers by free modules A^g, optionally followed by stripping free
  summands
"""

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Literal, Optional, Sequence, Tuple

from src.algcore import (
    Algebra,
    algebra_generators,
    frobenius_functional,
    gram_matrix,
    opposite,
    quotient_algebra,
    trace_form,
)
from src.errors import (
    IsoUndecided,
    MismatchError,
    NoSolution,
    NotSplitCommutative,
    RadicalVerificationFailed,
    ShapeMismatch,
    ValidationFailed,
)
from src.exactfield import split_roots
from src.linalg import (
    Matrix,
    Subspace,
    inverse,
    is_invertible,
    kernel_vectors,
    rank,
    solve_columns,
    span_basis,
)
from src.reports import ValidationReport
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Engine = Literal["minimal", "free"]

DEFAULT_SEED = 20240601
DEFAULT_RETRIES = 64


# ---------------------------------------------------------------------------
# Modules and maps
# ---------------------------------------------------------------------------

class Module:
    """
    A finite dimensional left module given by action matrices.

    Attributes:
        algebra: The acting algebra
        action: action[i] is the matrix of the basis element b_i
        dim: Dimension of the module (0 is allowed)
    """

    def __init__(self, algebra: Algebra, action: List[Matrix], name: str = "M"):
        if len(action) != algebra.dim:
            raise ShapeMismatch(f"{len(action)} action matrices for an algebra of dimension {algebra.dim}")
        self.algebra = algebra
        self.field = algebra.field
        self.action = action
        self.dim = action[0].nrows
        self.name = name

    @classmethod
    def zero(cls, algebra: Algebra) -> "Module":
        return cls(algebra, [Matrix.zeros(algebra.field, 0, 0) for _ in range(algebra.dim)], name="0")

    def act(self, a: Sequence) -> Matrix:
        """Matrix of the algebra element with coordinates a."""
        field = self.field
        out = Matrix.zeros(field, self.dim, self.dim)
        for i, c in enumerate(a):
            if c:
                for r, row in enumerate(self.action[i].rows):
                    field.addmul_row(out.rows[r], row, c)
        return out

    def act_on(self, a: Sequence, m: Sequence) -> list:
        """a·m without forming the matrix of a."""
        field = self.field
        out = [field.zero] * self.dim
        for i, c in enumerate(a):
            if c:
                field.addmul_row(out, self.action[i].apply(m), c)
        return out

    def __repr__(self) -> str:
        return f"<Module {self.name} dim={self.dim} over {self.algebra.name}>"


class ModuleMap:
    """An A-linear map given by a target.dim x source.dim matrix."""

    def __init__(self, source: Module, target: Module, matrix: Matrix, verify: bool = False):
        if matrix.shape != (target.dim, source.dim):
            raise ShapeMismatch(f"map matrix {matrix.shape} for {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if verify and not self.is_intertwiner():
            raise ValidationFailed(f"matrix is not a module map {source.name} -> {target.name}")

    def is_intertwiner(self) -> bool:
        for g in algebra_generators(self.source.algebra):
            if self.matrix @ self.source.action[g] != self.target.action[g] @ self.matrix:
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim

    def is_injective(self) -> bool:
        return rank(self.matrix) == self.source.dim

    def kernel(self) -> "Inclusion":
        vecs = kernel_vectors(self.source.field, self.matrix.rows, self.source.dim)
        return submodule(self.source, vecs, name=f"ker({self.source.name})")

    def image(self) -> "Inclusion":
        return submodule(self.target, self.matrix.columns(), name=f"im({self.source.name})")

    def __repr__(self) -> str:
        return f"<ModuleMap {self.source.name} -> {self.target.name}>"


class Inclusion(ModuleMap):
    """Inclusion of a submodule; keeps the echelon basis for coordinates."""

    def __init__(self, source: Module, target: Module, subspace: Subspace):
        matrix = Matrix.from_columns(target.field, subspace.basis, target.dim)
        super().__init__(source, target, matrix)
        self.subspace = subspace

    def coordinates(self, v: Sequence) -> list:
        return self.subspace.coordinates(v)

    def coordinates_matrix(self, m: Matrix) -> Matrix:
        """Columns of m rewritten in submodule coordinates."""
        cols = [self.subspace.coordinates(c) for c in m.columns()]
        return Matrix.from_columns(self.target.field, cols, self.source.dim)


def validate_module(module: Module) -> ValidationReport:
    """Check ρ(1) = id and ρ(b_i)ρ(b_j) = Σ c[i][j][k] ρ(b_k)."""
    report = ValidationReport(subject=f"module {module.name}")
    algebra = module.algebra
    if not module.act(algebra.unit).is_identity() and module.dim:
        report.add("unit acts as identity", [])
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = module.action[i] @ module.action[j]
            if lhs != module.act(algebra.product_vector(i, j)):
                report.add("action is multiplicative", [i, j])
    return report


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def _intertwiner_rows(rm: Matrix, rn: Matrix) -> List[list]:
    """Rows of the linear system X·rm - rn·X = 0 in the unknowns X (row-major)."""
    field = rm.field
    m, n = rm.nrows, rn.nrows
    d = m * n
    rows = []
    for r in range(n):
        for c in range(m):
            row = [field.zero] * d
            for s in range(m):
                v = rm.rows[s][c]
                if v:
                    row[r * m + s] = field.add(row[r * m + s], v)
            for s in range(n):
                v = rn.rows[r][s]
                if v:
                    row[s * m + c] = field.sub(row[s * m + c], v)
            rows.append(row)
    return rows


def hom_basis_vectors(source: Module, target: Module) -> List[list]:
    """
    Basis of Hom_A(source, target) as flattened (row-major) matrices.

    The intertwiner conditions are imposed one algebra generator at a time,
    each step cutting down the current parametrization.
    """
    if source.algebra is not target.algebra:
        raise ShapeMismatch("modules over different algebras")
    field = source.field
    m, n = source.dim, target.dim
    d = m * n
    if d == 0:
        return []
    basis: Optional[List[list]] = None
    for g in algebra_generators(source.algebra):
        rm, rn = source.action[g], target.action[g]
        if basis is None:
            basis = kernel_vectors(field, _intertwiner_rows(rm, rn), d)
        else:
            images = []
            for vec in basis:
                x = Matrix.unflatten(field, vec, n, m)
                images.append((x @ rm - rn @ x).flatten())
            rows = [[img[r] for img in images] for r in range(d)]
            combos = kernel_vectors(field, rows, len(basis))
            new_basis = []
            for y in combos:
                acc = [field.zero] * d
                for coef, vec in zip(y, basis):
                    if coef:
                        field.addmul_row(acc, vec, coef)
                new_basis.append(acc)
            basis = new_basis
        if not basis:
            return []
    if basis is None:
        # k·1 acts by scalars, every linear map is a module map
        basis = [[field.one if t == s else field.zero for t in range(d)] for s in range(d)]
    return basis


def hom_space(source: Module, target: Module) -> List[ModuleMap]:
    """Basis of all module maps source -> target."""
    field = source.field
    return [
        ModuleMap(source, target, Matrix.unflatten(field, v, target.dim, source.dim))
        for v in hom_basis_vectors(source, target)
    ]


# ---------------------------------------------------------------------------
# Constructions on modules
# ---------------------------------------------------------------------------

def submodule(module: Module, vectors: Sequence[Sequence], name: str = "") -> Inclusion:
    """
    The submodule spanned by vectors, which must already be A-stable.

    Raises:
        ValidationFailed: the span is not closed under the action
    """
    sub = Subspace(module.field, module.dim, vectors)
    action = []
    for mat in module.action:
        cols = []
        for v in sub.basis:
            try:
                cols.append(sub.coordinates(mat.apply(v)))
            except NoSolution:
                raise ValidationFailed(f"span is not a submodule of {module.name}")
        action.append(Matrix.from_columns(module.field, cols, sub.dim))
    child = Module(module.algebra, action, name=name or f"sub({module.name})")
    return Inclusion(child, module, sub)


def generated_submodule(module: Module, vectors: Sequence[Sequence], name: str = "") -> Inclusion:
    """The submodule generated by arbitrary vectors (closure under the generators)."""
    sub = Subspace(module.field, module.dim)
    frontier = [list(v) for v in vectors if sub.extend(v)]
    mats = [module.action[g] for g in algebra_generators(module.algebra)]
    while frontier:
        nxt = []
        for v in frontier:
            for mat in mats:
                w = mat.apply(v)
                if sub.extend(w):
                    nxt.append(w)
        frontier = nxt
    return submodule(module, sub.basis, name=name)


def quotient_module(module: Module, vectors: Sequence[Sequence], name: str = "") -> ModuleMap:
    """Projection M -> M/U for an A-stable span U; returns the projection map."""
    field = module.field
    sub = Subspace(field, module.dim, vectors)
    pivots = set(sub.pivots)
    keep = [i for i in range(module.dim) if i not in pivots]

    def project(v: Sequence) -> list:
        r = sub.reduce(v)
        return [r[i] for i in keep]

    action = []
    for mat in module.action:
        cols = [project(mat.column(f)) for f in keep]
        action.append(Matrix.from_columns(field, cols, len(keep)))
    quotient = Module(module.algebra, action, name=name or f"{module.name}/U")
    proj_cols = [project([field.one if t == j else field.zero for t in range(module.dim)])
                 for j in range(module.dim)]
    proj = Matrix.from_columns(field, proj_cols, len(keep))
    result = ModuleMap(module, quotient, proj)
    result.keep = keep
    return result


def restrict_module(module: Module, phi: Matrix, source: Algebra, name: str = "") -> Module:
    """Restriction along an algebra map phi: source -> module.algebra."""
    action = [module.act(phi.column(i)) for i in range(source.dim)]
    return Module(source, action, name=name or f"res({module.name})")


def direct_sum(*modules: Module, name: str = "") -> Module:
    """Block diagonal sum of modules over one algebra."""
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    algebra = modules[0].algebra
    if any(m.algebra is not algebra for m in modules):
        raise ShapeMismatch("direct_sum of modules over different algebras")
    action = [Matrix.diagonal_blocks([m.action[i] for m in modules], algebra.field)
              for i in range(algebra.dim)]
    return Module(algebra, action, name=name or "⊕".join(m.name for m in modules))


def free_module(algebra: Algebra, rank_: int) -> Module:
    from src.algcore import regular_module

    if rank_ == 0:
        return Module.zero(algebra)
    reg = regular_module(algebra)
    return reg if rank_ == 1 else direct_sum(*([reg] * rank_), name=f"{algebra.name}^{rank_}")


def dual_module(module: Module) -> Module:
    """D(M) = Hom_k(M, k) as a left module over A^op (transposed actions)."""
    return Module(opposite(module.algebra), [m.transpose() for m in module.action],
                  name=f"D({module.name})")


def hopf_dual_module(hopf, module: Module) -> Module:
    """D(M) as a left A-module via (a·f)(m) = f(S(a)m)."""
    s = hopf.antipode
    action = [module.act(s.column(i)).transpose() for i in range(hopf.dim)]
    return Module(module.algebra, action, name=f"D_H({module.name})")


# ---------------------------------------------------------------------------
# Radicals
# ---------------------------------------------------------------------------

def _closure_under(algebra: Algebra, vectors: Sequence[Sequence], side: str) -> Subspace:
    getter = algebra.left_matrix if side == "left" else algebra.right_matrix
    mats = [getter(g) for g in algebra_generators(algebra)]
    sub = Subspace(algebra.field, algebra.dim)
    frontier = [list(v) for v in vectors if sub.extend(v)]
    while frontier:
        nxt = []
        for v in frontier:
            for m in mats:
                w = m.apply(v)
                if sub.extend(w):
                    nxt.append(w)
        frontier = nxt
    return sub


def _right_ideal_generators(algebra: Algebra, ideal: Sequence[Sequence]) -> List[list]:
    gens: List[list] = []
    span = Subspace(algebra.field, algebra.dim)
    for v in ideal:
        if not span.contains(v):
            gens.append(list(v))
            span = _closure_under(algebra, gens, "right")
    return gens


def _frobenius_kernel(algebra: Algebra) -> List[list]:
    """Kernel of x ↦ x^(p^k) with p^k >= dim, for commutative algebras over 𝔽_p."""
    field = algebra.field
    p = field.characteristic
    q = p
    while q < algebra.dim:
        q *= p
    images = []
    for i in range(algebra.dim):
        result = list(algebra.unit)
        base = algebra.basis_vector(i)
        k = q
        while k:
            if k & 1:
                result = algebra.multiply(result, base)
            base = algebra.multiply(base, base)
            k >>= 1
        images.append(result)
    frob = Matrix.from_columns(field, images, algebra.dim)
    return kernel_vectors(field, frob.rows, algebra.dim)


def _verify_radical(algebra: Algebra, ideal: List[list]) -> Optional[str]:
    """None if ideal is a nilpotent two-sided ideal with semisimple quotient, else the reason."""
    field = algebra.field
    span = Subspace(field, algebra.dim, ideal)
    for g in algebra_generators(algebra):
        lg, rg = algebra.left_matrix(g), algebra.right_matrix(g)
        for v in span.basis:
            if not span.contains(lg.apply(v)) or not span.contains(rg.apply(v)):
                return "not a two-sided ideal"
    # J·V = Σ s·V for right-ideal generators s of J when V is a left ideal
    gens = [algebra.left_mult(s) for s in _right_ideal_generators(algebra, span.basis)]
    power = span.basis
    for _ in range(algebra.dim + 1):
        if not power:
            break
        nxt = span_basis(field, (m.apply(v) for m in gens for v in power), algebra.dim)
        if len(nxt) >= len(power):
            return "not nilpotent"
        power = nxt
    if power:
        return "not nilpotent"
    quotient, _, _ = quotient_algebra(algebra, span.basis)
    if quotient.dim == 0 or is_invertible(trace_form(quotient)):
        return None
    if field.characteristic and quotient.is_commutative():
        if not _frobenius_kernel(quotient):
            return None
    return "quotient is not semisimple"


def algebra_radical(algebra: Algebra) -> List[list]:
    """
    Basis of the Jacobson radical J, verified before it is returned.

    The candidate is the kernel of the trace form Tr(L_x L_y). In prime
    characteristic a commutative algebra whose trace form candidate fails
    verification falls back to the nilradical, the kernel of a Frobenius power.

    Raises:
        RadicalVerificationFailed: no candidate passed verification
    """
    with algebra._lock:
        if "radical" in algebra.cache:
            return algebra.cache["radical"]
    field = algebra.field
    candidate = kernel_vectors(field, trace_form(algebra).rows, algebra.dim)
    reason = _verify_radical(algebra, candidate)
    if reason is not None and field.characteristic and algebra.is_commutative():
        logger.debug(f"trace form radical of {algebra.name} rejected ({reason}); using the nilradical")
        candidate = _frobenius_kernel(algebra)
        reason = _verify_radical(algebra, candidate)
    if reason is not None:
        raise RadicalVerificationFailed(f"radical of {algebra.name}: {reason}")
    radical = span_basis(field, candidate, algebra.dim)
    with algebra._lock:
        algebra.cache["radical"] = radical
    logger.debug(f"radical of {algebra.name} has dimension {len(radical)}")
    return radical


def radical_of_module(module: Module) -> Inclusion:
    """rad M = J·M."""
    vecs = []
    for j in algebra_radical(module.algebra):
        mat = module.act(j)
        vecs.extend(mat.columns())
    return submodule(module, span_basis(module.field, vecs, module.dim), name=f"rad({module.name})")


def top(module: Module) -> ModuleMap:
    """Projection M -> M/JM."""
    rad = radical_of_module(module)
    return quotient_module(module, rad.subspace.basis, name=f"top({module.name})")


def socle(module: Module) -> Inclusion:
    """soc M = {m : J·m = 0}."""
    rows = []
    for j in algebra_radical(module.algebra):
        rows.extend(module.act(j).rows)
    return submodule(module, kernel_vectors(module.field, rows, module.dim), name=f"soc({module.name})")


# ---------------------------------------------------------------------------
# Idempotents and principal indecomposables
# ---------------------------------------------------------------------------

@dataclass
class PrimitiveIdempotents:
    """Complete set of orthogonal primitive idempotents with their PIMs A·e."""

    idempotents: List[list]
    pim_bases: List[List[list]]
    pims: List[Module]


def _split_idempotents(algebra: Algebra) -> List[list]:
    """Primitive idempotents of a split commutative semisimple algebra."""
    field = algebra.field
    idempotents = [list(algebra.unit)]
    for i in range(algebra.dim):
        if len(idempotents) == algebra.dim:
            break
        q = algebra.basis_vector(i)
        refined = []
        for e in idempotents:
            qe = algebra.multiply(q, e)
            poly = _minimal_polynomial_in(algebra, qe, e)
            roots = split_roots(field, poly)
            if roots is None:
                raise NotSplitCommutative(f"{algebra.name} does not split over {field.descriptor.label()}")
            if len(roots) == 1:
                refined.append(e)
                continue
            for lam in roots:
                # Lagrange idempotent Π (qe - μe)/(λ - μ) inside eA
                proj = list(e)
                for mu in roots:
                    if mu == lam:
                        continue
                    factor = [field.sub(a, field.mul(mu, b)) for a, b in zip(qe, e)]
                    scale = field.inv(field.sub(lam, mu))
                    proj = algebra.multiply(proj, [field.mul(scale, c) for c in factor])
                if any(proj):
                    refined.append(proj)
        idempotents = refined
    if len(idempotents) != algebra.dim:
        raise NotSplitCommutative(
            f"{algebra.name}: only {len(idempotents)} idempotents for dimension {algebra.dim}")
    return idempotents


def _minimal_polynomial_in(algebra: Algebra, u: list, e: list) -> List:
    """Minimal polynomial of u inside the corner algebra eA with identity e."""
    field = algebra.field
    powers = [list(e)]
    span = Subspace(field, algebra.dim, powers)
    while True:
        nxt = algebra.multiply(powers[-1], u)
        if span.contains(nxt):
            coeffs = solve_columns(
                field, [[p[r] for p in powers] for r in range(algebra.dim)], len(powers), [nxt]
            )[0]
            return [field.neg(c) for c in coeffs] + [field.one]
        span.extend(nxt)
        powers.append(nxt)


def _lift_idempotent(algebra: Algebra, u: list) -> list:
    """Refine u until it is idempotent with e ← 3e² − 2e³."""
    field = algebra.field
    three, two = field.from_int(3), field.from_int(2)
    e = u
    for _ in range(2 * algebra.dim + 2):
        e2 = algebra.multiply(e, e)
        if e2 == e:
            return e
        e3 = algebra.multiply(e2, e)
        e = [field.sub(field.mul(three, a), field.mul(two, b)) for a, b in zip(e2, e3)]
    raise RadicalVerificationFailed("idempotent refinement did not converge")


def primitive_idempotents(algebra: Algebra) -> PrimitiveIdempotents:
    """
    Orthogonal primitive idempotents of A lifted from A/J.

    Raises:
        NotSplitCommutative: A/J is not split commutative
    """
    with algebra._lock:
        if "idempotents" in algebra.cache:
            cached = algebra.cache["idempotents"]
            if isinstance(cached, Exception):
                raise cached
            return cached
    try:
        data = _compute_primitive_idempotents(algebra)
    except NotSplitCommutative as e:
        with algebra._lock:
            algebra.cache["idempotents"] = e
        raise
    with algebra._lock:
        algebra.cache["idempotents"] = data
    return data


def _compute_primitive_idempotents(algebra: Algebra) -> PrimitiveIdempotents:
    from src.algcore import regular_module

    field = algebra.field
    radical = algebra_radical(algebra)
    quotient, _, keep = quotient_algebra(algebra, radical)
    if not quotient.is_commutative():
        raise NotSplitCommutative(f"{algebra.name}/J is not commutative")
    bar = _split_idempotents(quotient)
    lifted: List[list] = []
    total = algebra.zero_vector()
    for eb in bar:
        u = algebra.zero_vector()
        for idx, c in zip(keep, eb):
            u[idx] = c
        f = [field.sub(a, b) for a, b in zip(algebra.unit, total)]
        u = algebra.multiply(algebra.multiply(f, u), f)
        e = _lift_idempotent(algebra, u)
        lifted.append(e)
        total = [field.add(a, b) for a, b in zip(total, e)]
    if total != list(algebra.unit):
        raise RadicalVerificationFailed("lifted idempotents do not sum to 1")
    reg = regular_module(algebra)
    pim_bases, pims = [], []
    for t, e in enumerate(lifted):
        basis = span_basis(field, algebra.right_mult(e).columns(), algebra.dim)
        inc = submodule(reg, basis, name=f"P{t}")
        pim_bases.append(inc.subspace.basis)
        pims.append(inc.source)
    logger.debug(f"{algebra.name}: PIM dimensions {[p.dim for p in pims]}")
    return PrimitiveIdempotents(lifted, pim_bases, pims)


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------

@dataclass
class CoverBlock:
    idempotent: list          # e with the block ≅ A·e
    basis: List[list]         # echelon basis of A·e inside A
    offset: int               # first coordinate of the block inside P


@dataclass
class Cover:
    """A projective module P = ⊕ A·e_b with an epimorphism onto a module."""

    module: Module
    epi: ModuleMap
    blocks: List[CoverBlock] = dc_field(default_factory=list)
    generators: List[list] = dc_field(default_factory=list)

    def generator_vector(self, b: int) -> list:
        """Coordinates of the block generator e_b inside P."""
        block = self.blocks[b]
        sub = Subspace(self.module.field, len(block.idempotent), block.basis)
        coords = sub.coordinates(block.idempotent)
        v = [self.module.field.zero] * self.module.dim
        v[block.offset:block.offset + len(coords)] = coords
        return v

    def map_from_generators(self, target: Module, images: Sequence[Sequence]) -> Matrix:
        """Matrix of P -> target sending e_b to images[b] (images[b] must satisfy e_b·x = x)."""
        cols = []
        for block, x in zip(self.blocks, images):
            for p in block.basis:
                cols.append(target.act_on(p, x))
        return Matrix.from_columns(target.field, cols, target.dim)


def _assemble_cover(module: Module, blocks: List[Tuple[list, List[list], Module]],
                    generators: List[list]) -> Cover:
    algebra = module.algebra
    if not blocks:
        zero = Module.zero(algebra)
        return Cover(zero, ModuleMap(zero, module, Matrix.zeros(module.field, module.dim, 0)))
    cover_module = direct_sum(*[b[2] for b in blocks], name=f"P({module.name})")
    cover_blocks, offset = [], 0
    for e, basis, pim in blocks:
        cover_blocks.append(CoverBlock(e, basis, offset))
        offset += pim.dim
    cover = Cover(cover_module, None, cover_blocks, generators)  # type: ignore[arg-type]
    cover.epi = ModuleMap(cover_module, module, cover.map_from_generators(module, generators))
    return cover


def free_cover(module: Module) -> Cover:
    """A^g -> M with g = dim top(M), sending the generators to lifts of a basis of top(M)."""
    from src.algcore import regular_module

    algebra = module.algebra
    if module.dim == 0:
        return _assemble_cover(module, [], [])
    proj = top(module)
    gens = [[module.field.one if t == f else module.field.zero for t in range(module.dim)]
            for f in proj.keep]
    reg = regular_module(algebra)
    standard = [algebra.basis_vector(i) for i in range(algebra.dim)]
    blocks = [(list(algebra.unit), standard, reg) for _ in gens]
    return _assemble_cover(module, blocks, gens)


def projective_cover(module: Module) -> Cover:
    """
    Minimal projective cover ⊕ P_i^{m_i} -> M built from PIMs.

    Raises:
        NotSplitCommutative: A/J is not split commutative
    """
    data = primitive_idempotents(module.algebra)
    if module.dim == 0:
        return _assemble_cover(module, [], [])
    field = module.field
    proj = top(module)
    top_span = Subspace(field, proj.target.dim)
    blocks, gens = [], []
    for e, basis, pim in zip(data.idempotents, data.pim_bases, data.pims):
        re = module.act(e)
        for col in re.columns():
            if not any(col):
                continue
            if top_span.extend(proj.matrix.apply(col)):
                blocks.append((e, basis, pim))
                gens.append(col)
    if top_span.dim != proj.target.dim:
        raise MismatchError("idempotent components do not span the top")
    return _assemble_cover(module, blocks, gens)


def cover(module: Module, engine: Engine = "minimal") -> Cover:
    """Projective cover for the minimal engine (with free fallback), free cover otherwise."""
    if engine == "minimal":
        try:
            return projective_cover(module)
        except NotSplitCommutative as e:
            logger.warning(f"minimal engine unavailable for {module.algebra.name} ({e}); using free covers")
    return free_cover(module)


# ---------------------------------------------------------------------------
# Syzygies
# ---------------------------------------------------------------------------

@dataclass
class Syzygy:
    """Ω(M) together with the data needed to lift maps through covers."""

    module: Module
    cover: Cover
    kernel: Inclusion      # ker(epi) inside the cover
    embedding: Matrix      # columns: Ω(M) inside ker(epi), in kernel coordinates
    retraction: Matrix     # ker(epi) -> Ω(M), left inverse of embedding

    @property
    def inclusion(self) -> Matrix:
        """Ω(M) inside the cover module."""
        return self.kernel.matrix @ self.embedding


def syzygy_data(module: Module, engine: Engine = "minimal", strip: bool = True,
                seed: int = DEFAULT_SEED, retries: int = DEFAULT_RETRIES) -> Syzygy:
    """Cover M, take the kernel, and for the free engine strip free summands."""
    cov = cover(module, engine)
    kernel = cov.epi.kernel()
    kernel.source.name = f"Ω({module.name})"
    field = module.field
    ident = Matrix.identity(field, kernel.source.dim)
    if engine == "free" and strip:
        stripped, emb, ret = _strip_with_maps(kernel.source, seed, retries)
        stripped.name = f"Ω({module.name})"
        return Syzygy(stripped, cov, kernel, emb, ret)
    return Syzygy(kernel.source, cov, kernel, ident, ident)


def syzygy(module: Module, engine: Engine = "minimal", strip: bool = True) -> Module:
    """Ω(M): the kernel of a projective (minimal) or free cover."""
    return syzygy_data(module, engine, strip).module


def cosyzygy(module: Module, engine: Engine = "minimal", strip: bool = True) -> Module:
    """Ω⁻¹(M) = D(Ω_{A^op}(D M)) over a self-injective algebra."""
    omega = syzygy(dual_module(module), engine, strip)
    result = dual_module(omega)
    result.name = f"Ω⁻¹({module.name})"
    return result


def lift_map(phi: ModuleMap, source: Syzygy, target: Syzygy) -> Tuple[Matrix, ModuleMap]:
    """
    Lift phi: M -> N through the covers and restrict it to the syzygies.

    Args:
        phi: Module map M -> N
        source: Syzygy data of M
        target: Syzygy data of N

    Returns:
        Tuple of (cover map P_M -> P_N, the induced map Ω(M) -> Ω(N))
    """
    field = phi.source.field
    p_n = target.cover.module
    epi_n = target.cover.epi.matrix
    images = []
    for b, block in enumerate(source.cover.blocks):
        want = phi.matrix.apply(source.cover.generators[b])
        if p_n.dim == 0:
            images.append([])
            continue
        y = solve_columns(field, epi_n.rows, p_n.dim, [want])[0]
        images.append(p_n.act_on(block.idempotent, y))
    lifted = source.cover.map_from_generators(p_n, images) if source.cover.blocks else \
        Matrix.zeros(field, p_n.dim, 0)
    restricted = lifted @ source.inclusion
    in_kernel = target.kernel.coordinates_matrix(restricted)
    omega = target.retraction @ in_kernel
    return lifted, ModuleMap(source.module, target.module, omega)


# ---------------------------------------------------------------------------
# Projectivity and free summands
# ---------------------------------------------------------------------------

def is_projective(module: Module) -> Tuple[bool, Optional[ModuleMap]]:
    """
    Decide projectivity by searching for a section of the free cover.

    Returns:
        Tuple of (projective?, section ψ with epi∘ψ = id when projective)
    """
    if module.dim == 0:
        return True, ModuleMap(module, module, Matrix.zeros(module.field, 0, 0))
    cov = free_cover(module)
    field = module.field
    homs = hom_basis_vectors(module, cov.module)
    target = Matrix.identity(field, module.dim).flatten()
    columns = []
    for vec in homs:
        psi = Matrix.unflatten(field, vec, cov.module.dim, module.dim)
        columns.append((cov.epi.matrix @ psi).flatten())
    rows = [[c[r] for c in columns] for r in range(len(target))]
    try:
        y = solve_columns(field, rows, len(homs), [target])[0]
    except NoSolution:
        return False, None
    acc = [field.zero] * (cov.module.dim * module.dim)
    for coef, vec in zip(y, homs):
        if coef:
            field.addmul_row(acc, vec, coef)
    section = ModuleMap(module, cov.module, Matrix.unflatten(field, acc, cov.module.dim, module.dim))
    return True, section


def _find_surjection(module: Module, reg: Module, rng: random.Random, retries: int) -> Optional[Matrix]:
    field = module.field
    homs = hom_basis_vectors(module, reg)
    if not homs:
        return None
    n = reg.dim
    for vec in homs:
        mat = Matrix.unflatten(field, vec, n, module.dim)
        if rank(mat) == n:
            return mat
    for _ in range(retries):
        acc = [field.zero] * (n * module.dim)
        for vec in homs:
            field.addmul_row(acc, vec, field.random(rng))
        mat = Matrix.unflatten(field, acc, n, module.dim)
        if rank(mat) == n:
            return mat
    return None


def _strip_with_maps(module: Module, seed: int, retries: int) -> Tuple[Module, Matrix, Matrix]:
    """Split off free rank-one summands; returns (M', embedding M' -> M, retraction M -> M')."""
    from src.algcore import regular_module

    field = module.field
    algebra = module.algebra
    reg = regular_module(algebra)
    rng = random.Random(seed)
    current = module
    emb = Matrix.identity(field, module.dim)
    ret = Matrix.identity(field, module.dim)
    stripped = 0
    while current.dim >= algebra.dim:
        phi = _find_surjection(current, reg, rng, retries)
        if phi is None:
            break
        m = solve_columns(field, phi.rows, current.dim, [list(algebra.unit)])[0]
        # projection onto ker φ along the summand A·m
        psi = Matrix.from_columns(field, [current.act_on(algebra.basis_vector(i), m)
                                          for i in range(algebra.dim)], current.dim)
        proj = Matrix.identity(field, current.dim) - psi @ phi
        inc = submodule(current, kernel_vectors(field, phi.rows, current.dim), name=current.name)
        to_kernel = inc.coordinates_matrix(proj)
        emb = emb @ inc.matrix
        ret = to_kernel @ ret
        current = inc.source
        stripped += 1
    if stripped:
        logger.debug(f"stripped {stripped} free summand(s) from {module.name}")
    return current, emb, ret


def strip_free_summands(module: Module, seed: int = DEFAULT_SEED,
                        retries: int = DEFAULT_RETRIES) -> Module:
    """Remove free rank-one summands found by a surjection search; M comes back unchanged if none is found."""
    return _strip_with_maps(module, seed, retries)[0]


# ---------------------------------------------------------------------------
# Stable Hom
# ---------------------------------------------------------------------------

def injective_hull(module: Module) -> Tuple[int, List[Matrix]]:
    """
    Embedding of M into a free module A^s, one component per generator of D(M).

    Each component is ι_λ = G⁻¹Λ where G is the Gram matrix of a Frobenius
    functional and Λ has rows λ·ρ(b_j).

    Returns:
        Tuple of (s, component matrices A.dim x M.dim)
    """
    algebra = module.algebra
    field = module.field
    if module.dim == 0:
        return 0, []
    f = frobenius_functional(algebra)
    g_inv = inverse(gram_matrix(algebra, f))
    dual_top = top(dual_module(module))
    components = []
    for idx in dual_top.keep:
        lam_rows = [list(module.action[j].rows[idx]) for j in range(algebra.dim)]
        components.append(g_inv @ Matrix(field, algebra.dim, module.dim, lam_rows))
    return len(components), components


@dataclass
class StableHom:
    """Hom_A(M, N) modulo the maps that factor through a projective."""

    source: Module
    target: Module
    hom: List[list]
    projective: Subspace
    representatives: List[list]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def maps(self) -> List[ModuleMap]:
        f = self.source.field
        return [ModuleMap(self.source, self.target,
                          Matrix.unflatten(f, v, self.target.dim, self.source.dim))
                for v in self.representatives]

    def coordinates(self, vector: Sequence) -> list:
        """Coordinates of a map (flattened) on the representatives, modulo PHom."""
        field = self.source.field
        columns = self.representatives + self.projective.basis
        if not columns:
            return []
        length = len(vector)
        rows = [[c[r] for c in columns] for r in range(length)]
        sol = solve_columns(field, rows, len(columns), [list(vector)])[0]
        return sol[:self.dim]

    def is_zero(self, vector: Sequence) -> bool:
        return self.projective.contains(vector)


def projective_maps(source: Module, target: Module, method: str = "cover",
                    engine: Engine = "minimal") -> Subspace:
    """Span of the maps source -> target that factor through a projective module."""
    field = source.field
    length = source.dim * target.dim
    vecs = []
    if length == 0:
        return Subspace(field, length)
    if method == "hull":
        _, comps = injective_hull(source)
        n = source.algebra.dim
        for t in range(target.dim):
            nt = [field.one if r == t else field.zero for r in range(target.dim)]
            w = Matrix.from_columns(field, [target.action[k].apply(nt) for k in range(n)], target.dim)
            for iota in comps:
                vecs.append((w @ iota).flatten())
    elif method == "cover":
        cov = cover(target, engine)
        for vec in hom_basis_vectors(source, cov.module):
            h = Matrix.unflatten(field, vec, cov.module.dim, source.dim)
            vecs.append((cov.epi.matrix @ h).flatten())
    else:
        raise ValueError(f"unknown stable Hom method '{method}'")
    return Subspace(field, length, vecs)


def stable_hom(source: Module, target: Module, method: str = "cover",
               engine: Engine = "minimal") -> StableHom:
    """
    Stable Hom: Hom_A(M, N) / PHom(M, N).

    Args:
        method: "cover" composes maps M -> P with a projective epi P -> N
            (any algebra); "hull" restricts maps A^s -> N along an injective
            hull of M (self-injective algebras)
    """
    hom = hom_basis_vectors(source, target)
    phom = projective_maps(source, target, method, engine)
    reps = phom.complement_representatives(hom)
    return StableHom(source, target, hom, phom, reps)


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

@dataclass
class IsoResult:
    status: Literal["isomorphic", "not_isomorphic", "undecided"]
    certificate: Optional[ModuleMap] = None
    seed: int = DEFAULT_SEED

    def __bool__(self) -> bool:
        return self.status == "isomorphic"

    def require(self) -> ModuleMap:
        if self.status == "undecided":
            raise IsoUndecided(f"no isomorphism certificate found (seed {self.seed})")
        if self.status == "not_isomorphic" or self.certificate is None:
            raise MismatchError("modules are not isomorphic")
        return self.certificate


def modules_isomorphic(m: Module, n: Module, seed: int = DEFAULT_SEED,
                       retries: int = DEFAULT_RETRIES) -> IsoResult:
    """Search for an invertible intertwiner m -> n (basis scan, then seeded random combinations)."""
    field = m.field
    if m.dim != n.dim:
        return IsoResult("not_isomorphic", seed=seed)
    if m.dim == 0:
        return IsoResult("isomorphic", ModuleMap(m, n, Matrix.zeros(field, 0, 0)), seed)
    homs = hom_basis_vectors(m, n)
    if not homs:
        return IsoResult("not_isomorphic", seed=seed)
    for vec in homs:
        mat = Matrix.unflatten(field, vec, n.dim, m.dim)
        if is_invertible(mat):
            return IsoResult("isomorphic", ModuleMap(m, n, mat), seed)
    rng = random.Random(seed)
    for _ in range(retries):
        acc = [field.zero] * (m.dim * n.dim)
        for vec in homs:
            field.addmul_row(acc, vec, field.random(rng))
        mat = Matrix.unflatten(field, acc, n.dim, m.dim)
        if is_invertible(mat):
            return IsoResult("isomorphic", ModuleMap(m, n, mat), seed)
    logger.warning(f"isomorphism {m.name} ≅ {n.name} undecided after {retries} tries")
    return IsoResult("undecided", seed=seed)
