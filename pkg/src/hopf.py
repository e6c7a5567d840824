"""
Hopf structure on top of an Algebra.

Coproducts are stored per basis element as lists of (coef, j, k) meaning
Δ(b_i) = Σ coef · b_j ⊗ b_k. The antipode is a matrix whose column i holds
the coordinates of S(b_i).
"""

import threading
import warnings
from collections import defaultdict
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from src.algcore import (
    Algebra,
    algebra_generators,
    check_algebra_map,
    enveloping,
    gram_matrix,
    validate_algebra,
)
from src.errors import (
    DegenerateForm,
    DimensionNotOne,
    NotAutomorphism,
    NotEigenvector,
    ShapeMismatch,
    ValidationFailed,
)
from src.linalg import Matrix, inverse, is_invertible, kernel_vectors, kronecker, rank, solve_matrix
from src.modrep import Inclusion, Module, ModuleMap, quotient_module, submodule, validate_module
from src.reports import ValidationReport
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

CoproductTerms = List[Tuple[object, int, int]]


class HopfAlgebra:
    """
    A finite dimensional Hopf algebra.

    Attributes:
        algebra: Underlying algebra
        coproduct: coproduct[i] lists the (coef, j, k) terms of Δ(b_i)
        counit: ε(b_i) for every basis index
        antipode: Matrix with S(b_i) in column i
    """

    def __init__(self, algebra: Algebra, coproduct: List[CoproductTerms], counit: Sequence,
                 antipode: Matrix, name: Optional[str] = None):
        n = algebra.dim
        if len(coproduct) != n or len(counit) != n or antipode.shape != (n, n):
            raise ShapeMismatch(f"Hopf data does not match dimension {n}")
        self.algebra = algebra
        self.coproduct = coproduct
        self.counit = list(counit)
        self.antipode = antipode
        self.name = name or algebra.name
        self._cache: Dict[str, object] = {}
        self._lock = threading.RLock()

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> List[str]:
        return self.algebra.labels

    def counit_of(self, u: Sequence):
        field = self.field
        acc = field.zero
        for c, e in zip(u, self.counit):
            if c and e:
                acc = field.add(acc, field.mul(c, e))
        return acc

    def coproduct_of(self, u: Sequence) -> Dict[Tuple[int, int], object]:
        """Δ(u) as a sparse dict {(j, k): coef}."""
        field = self.field
        out: Dict[Tuple[int, int], object] = defaultdict(lambda: field.zero)
        for i, a in enumerate(u):
            if not a:
                continue
            for c, j, k in self.coproduct[i]:
                out[(j, k)] = field.add(out[(j, k)], field.mul(a, c))
        return {key: v for key, v in out.items() if v}

    def antipode_of(self, u: Sequence) -> list:
        return self.antipode.apply(u)

    def _memo(self, key: str, build):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = build()
        with self._lock:
            self._cache.setdefault(key, value)
            return self._cache[key]

    def __repr__(self) -> str:
        return f"<HopfAlgebra {self.name} dim={self.dim} over {self.field.descriptor.label()}>"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _tensor_product(hopf: HopfAlgebra, x: Dict[Tuple[int, int], object],
                    y: Dict[Tuple[int, int], object]) -> Dict[Tuple[int, int], object]:
    """Product in A ⊗ A of two sparse tensors."""
    field = hopf.field
    algebra = hopf.algebra
    n = algebra.dim
    out: Dict[Tuple[int, int], object] = defaultdict(lambda: field.zero)
    for (a, b), c1 in x.items():
        for (p, q), c2 in y.items():
            c = field.mul(c1, c2)
            for k1, s1 in algebra.mult[a * n + p]:
                for k2, s2 in algebra.mult[b * n + q]:
                    out[(k1, k2)] = field.add(out[(k1, k2)], field.mul(c, field.mul(s1, s2)))
    return {key: v for key, v in out.items() if v}


def validate_hopf(hopf: HopfAlgebra) -> ValidationReport:
    """
    Check every Hopf axiom on basis elements.

    Checks the underlying algebra, coassociativity, the counit law, that Δ
    and ε are multiplicative and unital, the antipode identities and that S
    is invertible.

    Args:
        hopf: Hopf algebra to check

    Returns:
        ValidationReport with a witness for each failure
    """
    report = ValidationReport(subject=f"Hopf algebra {hopf.name}")
    report.merge(validate_algebra(hopf.algebra))
    field = hopf.field
    algebra = hopf.algebra
    n = algebra.dim

    for i in range(n):
        left: Dict[Tuple[int, int, int], object] = defaultdict(lambda: field.zero)
        right: Dict[Tuple[int, int, int], object] = defaultdict(lambda: field.zero)
        for c, j, k in hopf.coproduct[i]:
            for c2, p, q in hopf.coproduct[j]:
                left[(p, q, k)] = field.add(left[(p, q, k)], field.mul(c, c2))
            for c2, p, q in hopf.coproduct[k]:
                right[(j, p, q)] = field.add(right[(j, p, q)], field.mul(c, c2))
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            report.add("coassociativity", [i])

        lhs = algebra.zero_vector()
        rhs = algebra.zero_vector()
        for c, j, k in hopf.coproduct[i]:
            if hopf.counit[j]:
                lhs[k] = field.add(lhs[k], field.mul(c, hopf.counit[j]))
            if hopf.counit[k]:
                rhs[j] = field.add(rhs[j], field.mul(c, hopf.counit[k]))
        e = algebra.basis_vector(i)
        if lhs != e:
            report.add("counit (ε⊗id)Δ = id", [i])
        if rhs != e:
            report.add("counit (id⊗ε)Δ = id", [i])

    unit_delta = {(a, b): field.mul(x, y) for a, x in enumerate(algebra.unit) for b, y in
                  enumerate(algebra.unit) if x and y}
    if hopf.coproduct_of(algebra.unit) != unit_delta:
        report.add("Δ(1) = 1⊗1", [])
    if hopf.counit_of(algebra.unit) != field.one:
        report.add("ε(1) = 1", [])
    deltas = [hopf.coproduct_of(algebra.basis_vector(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            prod = algebra.product_vector(i, j)
            if hopf.coproduct_of(prod) != _tensor_product(hopf, deltas[i], deltas[j]):
                report.add("Δ multiplicative", [i, j])
            if hopf.counit_of(prod) != field.mul(hopf.counit[i], hopf.counit[j]):
                report.add("ε multiplicative", [i, j])

    s = hopf.antipode
    for i in range(n):
        target = [field.mul(hopf.counit[i], u) for u in algebra.unit]
        left_conv = algebra.zero_vector()
        right_conv = algebra.zero_vector()
        for c, j, k in hopf.coproduct[i]:
            field.addmul_row(left_conv, algebra.multiply(s.column(j), algebra.basis_vector(k)), c)
            field.addmul_row(right_conv, algebra.multiply(algebra.basis_vector(j), s.column(k)), c)
        if left_conv != target:
            report.add("antipode Σ S(a₁)a₂ = ε(a)1", [i])
        if right_conv != target:
            report.add("antipode Σ a₁S(a₂) = ε(a)1", [i])
    if not is_invertible(s):
        report.add("antipode invertible", [])
    if report.ok:
        logger.debug(f"{hopf.name}: all Hopf axioms hold")
    return report


# ---------------------------------------------------------------------------
# Antipode
# ---------------------------------------------------------------------------

class NotFinite(NamedTuple):
    """No power S^m with m <= bound is the identity."""

    bound: int


def antipode_inverse(hopf: HopfAlgebra) -> Matrix:
    """S̄ = S⁻¹."""
    return hopf._memo("antipode_inverse", lambda: inverse(hopf.antipode))


def antipode_order(hopf: HopfAlgebra, bound: Optional[int] = None) -> Union[int, NotFinite]:
    bound = bound if bound is not None else 2 * hopf.dim * hopf.dim
    power = hopf.antipode
    for m in range(1, bound + 1):
        if power.is_identity():
            return m
        power = power @ hopf.antipode
    return NotFinite(bound)


# ---------------------------------------------------------------------------
# Dual Hopf algebra D(A)
# ---------------------------------------------------------------------------

class LinearFunctional:
    """An element of D(A) in the dual basis."""

    __slots__ = ("hopf", "coords")

    def __init__(self, hopf: HopfAlgebra, coords: Sequence):
        if len(coords) != hopf.dim:
            raise ShapeMismatch(f"functional of length {len(coords)} on dimension {hopf.dim}")
        self.hopf = hopf
        self.coords = list(coords)

    def __call__(self, u: Sequence):
        field = self.hopf.field
        acc = field.zero
        for a, f in zip(u, self.coords):
            if a and f:
                acc = field.add(acc, field.mul(a, f))
        return acc

    def value(self, i: int):
        return self.coords[i]

    def __mul__(self, other: "LinearFunctional") -> "LinearFunctional":
        return dual_hopf_multiply(self.hopf, self, other)

    def compose(self, matrix: Matrix) -> "LinearFunctional":
        """f ∘ T for a linear endomorphism T of A."""
        return LinearFunctional(self.hopf, [self(matrix.column(i)) for i in range(self.hopf.dim)])

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearFunctional) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(tuple(self.hopf.field.format(c) for c in self.coords))

    def format(self) -> str:
        fmt = self.hopf.field.format
        return ", ".join(f"{lbl}↦{fmt(c)}" for lbl, c in zip(self.hopf.labels, self.coords))

    def __repr__(self) -> str:
        return f"LinearFunctional({self.format()})"


def counit_functional(hopf: HopfAlgebra) -> LinearFunctional:
    """ε, the unit of D(A)."""
    return LinearFunctional(hopf, hopf.counit)


def dual_hopf_multiply(hopf: HopfAlgebra, f: LinearFunctional, g: LinearFunctional) -> LinearFunctional:
    """Convolution (f·g)(a) = Σ f(a₁)g(a₂)."""
    field = hopf.field
    coords = []
    for i in range(hopf.dim):
        acc = field.zero
        for c, j, k in hopf.coproduct[i]:
            fj, gk = f.coords[j], g.coords[k]
            if fj and gk:
                acc = field.add(acc, field.mul(c, field.mul(fj, gk)))
        coords.append(acc)
    return LinearFunctional(hopf, coords)


def right_hit_matrix(hopf: HopfAlgebra, f: LinearFunctional) -> Matrix:
    """Matrix of a ↦ a ↼ f = Σ f(a₁)a₂."""
    field = hopf.field
    cols = []
    for i in range(hopf.dim):
        col = [field.zero] * hopf.dim
        for c, j, k in hopf.coproduct[i]:
            if f.coords[j]:
                col[k] = field.add(col[k], field.mul(c, f.coords[j]))
        cols.append(col)
    return Matrix.from_columns(field, cols, hopf.dim)


def left_hit_matrix(hopf: HopfAlgebra, f: LinearFunctional) -> Matrix:
    """Matrix of a ↦ f ⇀ a = Σ a₁f(a₂)."""
    field = hopf.field
    cols = []
    for i in range(hopf.dim):
        col = [field.zero] * hopf.dim
        for c, j, k in hopf.coproduct[i]:
            if f.coords[k]:
                col[j] = field.add(col[j], field.mul(c, f.coords[k]))
        cols.append(col)
    return Matrix.from_columns(field, cols, hopf.dim)


def right_hit(hopf: HopfAlgebra, a: Sequence, f: LinearFunctional) -> list:
    return right_hit_matrix(hopf, f).apply(a)


def left_hit(hopf: HopfAlgebra, f: LinearFunctional, a: Sequence) -> list:
    return left_hit_matrix(hopf, f).apply(a)


# ---------------------------------------------------------------------------
# Integrals, modular function, Nakayama automorphism
# ---------------------------------------------------------------------------

def integrals(hopf: HopfAlgebra, side: str = "left", where: str = "algebra") -> List[list]:
    """
    Basis of the space of integrals.

    Args:
        hopf: Hopf algebra
        side: "left" (ht = ε(h)t) or "right" (th = ε(h)t)
        where: "algebra" for integrals in A, "dual" for integrals in D(A)
            under convolution, where ε(h) becomes p(1_A)

    Returns:
        Basis vectors (coordinates in A, or in the dual basis of D(A))
    """
    if side not in ("left", "right") or where not in ("algebra", "dual"):
        raise ValueError(f"bad integral request side={side} where={where}")
    field = hopf.field
    n = hopf.dim
    rows: List[list] = []
    if where == "algebra":
        getter = hopf.algebra.left_matrix if side == "left" else hopf.algebra.right_matrix
        for h in algebra_generators(hopf.algebra):
            mat = getter(h)
            eps = hopf.counit[h]
            for r in range(n):
                row = list(mat.rows[r])
                if eps:
                    row[r] = field.sub(row[r], eps)
                rows.append(row)
    else:
        # (δ_m·λ)(b_i) = p(1)λ(b_i) for left; (λ·δ_m)(b_i) likewise for right
        unit = hopf.algebra.unit
        for m in range(n):
            for i in range(n):
                row = [field.zero] * n
                for c, j, k in hopf.coproduct[i]:
                    if side == "left" and j == m:
                        row[k] = field.add(row[k], c)
                    elif side == "right" and k == m:
                        row[j] = field.add(row[j], c)
                if unit[m]:
                    row[i] = field.sub(row[i], unit[m])
                rows.append(row)
    basis = kernel_vectors(field, rows, n)
    if len(basis) != 1:
        target = f"D({hopf.name})" if where == "dual" else hopf.name
        msg = f"{side} integrals of {target} have dimension {len(basis)}"
        logger.warning(msg)
        warnings.warn(msg, DimensionNotOne)
    return basis


def modular_function(hopf: HopfAlgebra) -> LinearFunctional:
    """
    The distinguished grouplike α of D(A) with a·t = α(a)t for a right integral t.

    Raises:
        NotEigenvector: some a·t is not a multiple of t
    """
    def build() -> LinearFunctional:
        field = hopf.field
        algebra = hopf.algebra
        basis = integrals(hopf, "right", "algebra")
        if not basis:
            raise NotEigenvector(f"{hopf.name} has no nonzero right integral")
        t = basis[0]
        pivot = next(i for i, v in enumerate(t) if v)
        values = []
        for a in range(hopf.dim):
            at = algebra.left_matrix(a).apply(t)
            lam = field.div(at[pivot], t[pivot])
            if at != [field.mul(lam, v) for v in t]:
                raise NotEigenvector(f"{algebra.labels[a]}·t is not a multiple of t")
            values.append(lam)
        alpha = LinearFunctional(hopf, values)
        if alpha(algebra.unit) != field.one:
            raise NotEigenvector("α(1) != 1")
        for i in range(hopf.dim):
            for j in range(hopf.dim):
                if alpha(algebra.product_vector(i, j)) != field.mul(values[i], values[j]):
                    raise NotEigenvector(f"α is not multiplicative at ({i}, {j})")
        logger.debug(f"modular function of {hopf.name}: {alpha.format()}")
        return alpha

    return hopf._memo("modular_function", build)


def _order_of(matrix: Matrix, bound: int) -> Optional[int]:
    power = matrix
    for m in range(1, bound + 1):
        if power.is_identity():
            return m
        power = power @ matrix
    return None


class Nakayama(NamedTuple):
    matrix: Matrix
    order: int


def _require_automorphism(hopf: HopfAlgebra, nu: Matrix, label: str) -> None:
    if not is_invertible(nu):
        raise NotAutomorphism(f"{label} of {hopf.name} is not invertible")
    failures = check_algebra_map(hopf.algebra, hopf.algebra, nu)
    if failures:
        raise NotAutomorphism(f"{label} of {hopf.name} is not multiplicative at {failures[0]}")


def nakayama_via_modular(hopf: HopfAlgebra) -> Nakayama:
    """
    ν(a) = S̄²(a ↼ α), verified to be an algebra automorphism.

    Returns:
        Nakayama(matrix, order); the order divides 2·dim A

    Raises:
        NotAutomorphism: ν fails to be an automorphism or has no finite order
    """
    def build() -> Nakayama:
        sbar = antipode_inverse(hopf)
        nu = sbar @ sbar @ right_hit_matrix(hopf, modular_function(hopf))
        _require_automorphism(hopf, nu, "ν")
        order = _order_of(nu, 2 * hopf.dim)
        if order is None:
            raise NotAutomorphism(f"ν of {hopf.name} has no order dividing {2 * hopf.dim}")
        if (2 * hopf.dim) % order:
            logger.warning(f"order {order} of ν does not divide {2 * hopf.dim}")
        return Nakayama(nu, order)

    return hopf._memo("nakayama", build)


def nakayama_inverse(hopf: HopfAlgebra) -> Matrix:
    """ν⁻¹(a) = S²(a ↼ α⁻¹) with α⁻¹ = α∘S."""
    alpha_inv = modular_function(hopf).compose(hopf.antipode)
    s = hopf.antipode
    nu_inv = s @ s @ right_hit_matrix(hopf, alpha_inv)
    if not (nakayama_via_modular(hopf).matrix @ nu_inv).is_identity():
        raise NotAutomorphism(f"S²(− ↼ α∘S) does not invert ν on {hopf.name}")
    return nu_inv


def frobenius_form(hopf: HopfAlgebra, side: str = "right") -> Tuple[LinearFunctional, Matrix]:
    """
    The Frobenius functional f (an integral of D(A)) and its Gram matrix f(b_i b_j).

    Raises:
        DegenerateForm: the Gram matrix is singular
    """
    basis = integrals(hopf, side, "dual")
    if not basis:
        raise DegenerateForm(f"D({hopf.name}) has no {side} integral")
    f = LinearFunctional(hopf, basis[0])
    gram = gram_matrix(hopf.algebra, f.coords)
    if not is_invertible(gram):
        raise DegenerateForm(f"Gram matrix of the {side} integral of D({hopf.name}) is singular")
    if hopf.algebra.frobenius_hint is None:
        hopf.algebra.frobenius_hint = list(f.coords)
    return f, gram


def nakayama_via_frobenius(hopf: HopfAlgebra, side: str = "right") -> Matrix:
    """ν with f(xb) = f(bν(x)) for all b, i.e. G·ν = Gᵀ."""
    _, gram = frobenius_form(hopf, side)
    nu = solve_matrix(gram, gram.transpose())
    _require_automorphism(hopf, nu, "ν (Frobenius form)")
    return nu


def nakayama_square(hopf: HopfAlgebra) -> Tuple[Matrix, bool]:
    """
    ν∘ν, checked against (S̄⁴a) ↼ α².

    Returns:
        Tuple of (ν², whether ν² is the identity)
    """
    nu = nakayama_via_modular(hopf).matrix
    square = nu @ nu
    alpha = modular_function(hopf)
    sbar = antipode_inverse(hopf)
    closed = right_hit_matrix(hopf, alpha * alpha) @ sbar.power(4)
    if square != closed:
        raise NotAutomorphism(f"ν² of {hopf.name} disagrees with (S̄⁴a) ↼ α²")
    return square, square.is_identity()


# ---------------------------------------------------------------------------
# Modules built from the Hopf structure
# ---------------------------------------------------------------------------

def twisted_module(module: Module, phi: Matrix, name: str = "") -> Module:
    """M with a·m = φ(a)m for an algebra automorphism φ."""
    action = [module.act(phi.column(i)) for i in range(module.algebra.dim)]
    return Module(module.algebra, action, name=name or f"{module.name}_φ")


def trivial_module(hopf: HopfAlgebra) -> Module:
    """k with a·r = ε(a)r."""
    field = hopf.field
    action = [Matrix(field, 1, 1, [[e]]) for e in hopf.counit]
    return Module(hopf.algebra, action, name="k")


def adjoint_module(hopf: HopfAlgebra) -> Module:
    """
    A^ad: A acting on itself by a·b = Σ a₁bS(a₂).

    Raises:
        ValidationFailed: the result violates the module axioms
    """
    def build() -> Module:
        field = hopf.field
        algebra = hopf.algebra
        n = hopf.dim
        action = []
        for i in range(n):
            mat = Matrix.zeros(field, n, n)
            for c, j, k in hopf.coproduct[i]:
                term = algebra.left_matrix(j) @ algebra.right_mult(hopf.antipode.column(k))
                for r in range(n):
                    field.addmul_row(mat.rows[r], term.rows[r], c)
            action.append(mat)
        module = Module(algebra, action, name=f"{hopf.name}^ad")
        report = validate_module(module)
        if not report.ok:
            raise ValidationFailed(report.summary())
        return module

    return hopf._memo("adjoint", build)


def counit_kernel_inclusion(hopf: HopfAlgebra) -> Inclusion:
    """Ker ε as a submodule of A^ad."""
    adj = adjoint_module(hopf)
    vecs = kernel_vectors(hopf.field, [hopf.counit], hopf.dim)
    return submodule(adj, vecs, name="Ker ε")


def counit_kernel_module(hopf: HopfAlgebra) -> Module:
    return counit_kernel_inclusion(hopf).source


def adjoint_splitting(hopf: HopfAlgebra) -> ModuleMap:
    """
    The isomorphism k ⊕ Ker ε → A^ad sending 1 ↦ 1_A and Ker ε to itself.

    Raises:
        ValidationFailed: the map is not an isomorphism of modules
    """
    from src.modrep import direct_sum

    adj = adjoint_module(hopf)
    kernel = counit_kernel_inclusion(hopf)
    source = direct_sum(trivial_module(hopf), kernel.source, name="k ⊕ Ker ε")
    cols = [list(hopf.algebra.unit)] + kernel.matrix.columns()
    iso = ModuleMap(source, adj, Matrix.from_columns(hopf.field, cols, hopf.dim))
    if not iso.is_intertwiner() or not is_invertible(iso.matrix):
        raise ValidationFailed(f"k ⊕ Ker ε → {adj.name} is not an isomorphism")
    return iso


def sigma_embedding(hopf: HopfAlgebra) -> Matrix:
    """
    σ(a) = Σ a₁ ⊗ S(a₂) as a matrix A → A^e, verified injective and multiplicative.

    Raises:
        ValidationFailed: σ is not an injective algebra map
    """
    field = hopf.field
    n = hopf.dim
    env = enveloping(hopf.algebra)
    cols = []
    for i in range(n):
        col = [field.zero] * (n * n)
        for c, j, k in hopf.coproduct[i]:
            s_k = hopf.antipode.column(k)
            for l, v in enumerate(s_k):
                if v:
                    col[j * n + l] = field.add(col[j * n + l], field.mul(c, v))
        cols.append(col)
    sigma = Matrix.from_columns(field, cols, n * n)
    if rank(sigma) != n:
        raise ValidationFailed("σ is not injective")
    failures = check_algebra_map(hopf.algebra, env, sigma)
    if failures:
        raise ValidationFailed(f"σ is not multiplicative at {failures[0]}")
    return sigma


def a_as_enveloping_module(hopf: HopfAlgebra) -> Module:
    """A as a left A^e-module, (a⊗b)·m = amb."""
    algebra = hopf.algebra
    n = algebra.dim
    env = enveloping(algebra)
    action = [algebra.left_matrix(i) @ algebra.right_matrix(j) for i in range(n) for j in range(n)]
    return Module(env, action, name=f"{hopf.name} as {env.name}-module")


def induced_module(hopf: HopfAlgebra, module: Module) -> Module:
    """
    A^e ⊗_A M, with A acting on A^e from the right through σ.

    Built as the quotient of A^e ⊗ M by the span of xσ(g) ⊗ m − x ⊗ g·m
    over basis elements x, algebra generators g and basis vectors m.
    """
    field = hopf.field
    env = enveloping(hopf.algebra)
    sigma = sigma_embedding(hopf)
    m = module.dim
    ident = Matrix.identity(field, m)
    free = Module(env, [kronecker(env.left_matrix(y), ident) for y in range(env.dim)],
                  name=f"{env.name}⊗{module.name}")
    relations = []
    for g in algebra_generators(hopf.algebra):
        right_sigma = env.right_mult(sigma.column(g))
        act = module.action[g]
        for x in range(env.dim):
            xs = right_sigma.column(x)
            for mi in range(m):
                v = [field.zero] * (env.dim * m)
                for y, c in enumerate(xs):
                    if c:
                        v[y * m + mi] = field.add(v[y * m + mi], c)
                for r in range(m):
                    c = act.rows[r][mi]
                    if c:
                        v[x * m + r] = field.sub(v[x * m + r], c)
                relations.append(v)
    proj = quotient_module(free, relations, name=f"{env.name}⊗_A {module.name}")
    logger.debug(f"induced module of {module.name} has dimension {proj.target.dim}")
    return proj.target
