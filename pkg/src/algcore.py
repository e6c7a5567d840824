"""
Finite dimensional associative unital algebras given by structure constants.

An algebra with basis b_0..b_{n-1} stores, for each pair (i, j), the sparse
expansion b_i·b_j = Σ_k c[i][j][k] b_k. Opposite, tensor and enveloping
algebras are built from those tables; the tensor basis is row-major,
(i, j) ↦ i·dim B + j.
"""

import random
import threading
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import MixedFields, NotSelfInjective, ShapeMismatch
from src.exactfield import Field
from src.linalg import Matrix, Subspace, is_invertible, kronecker
from src.reports import ValidationReport
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

SparseVector = List[Tuple[int, object]]


def _sparse(vector: Sequence) -> SparseVector:
    return [(k, v) for k, v in enumerate(vector) if v]


class Algebra:
    """
    A finite dimensional associative unital algebra.

    Attributes:
        field: Coefficient field
        labels: Basis labels
        unit: Coordinates of 1
        mult: mult[i * dim + j] is the sparse list of (k, c[i][j][k])
        name: Display name
    """

    def __init__(self, field: Field, labels: Sequence[str], unit: Sequence,
                 mult: List[SparseVector], name: str = "A"):
        n = len(labels)
        if len(unit) != n or len(mult) != n * n:
            raise ShapeMismatch(f"structure data does not match dimension {n}")
        self.field = field
        self.labels = list(labels)
        self.dim = n
        self.unit = list(unit)
        self.mult = mult
        self.name = name
        # Functional with invertible Gram matrix, when one is known
        self.frobenius_hint: Optional[list] = None
        self._left: Dict[int, Matrix] = {}
        self._right: Dict[int, Matrix] = {}
        self._opposite: Optional["Algebra"] = None
        self._enveloping: Optional["Algebra"] = None
        self._generators: Optional[List[int]] = None
        self._trace_form: Optional[Matrix] = None
        # Factors (A, B) when built as A ⊗ B
        self.factors: Optional[Tuple["Algebra", "Algebra"]] = None
        # Per-algebra memo for radicals, idempotents and similar derived data
        self.cache: Dict[str, object] = {}
        self._lock = threading.RLock()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_products(cls, field: Field, labels: Sequence[str], unit: Sequence,
                      products: Sequence[Sequence[Sequence]], name: str = "A") -> "Algebra":
        """Build from dense products[i][j] = coordinates of b_i·b_j (payloads)."""
        n = len(labels)
        mult = [_sparse(products[i][j]) for i in range(n) for j in range(n)]
        return cls(field, labels, unit, mult, name)

    # -- basic arithmetic -------------------------------------------------

    @property
    def descriptor(self):
        return self.field.descriptor

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vector(self) -> list:
        return [self.field.zero] * self.dim

    def product_vector(self, i: int, j: int) -> list:
        v = self.zero_vector()
        for k, c in self.mult[i * self.dim + j]:
            v[k] = c
        return v

    def structure(self, i: int, j: int, k: int):
        for kk, c in self.mult[i * self.dim + j]:
            if kk == k:
                return c
        return self.field.zero

    def multiply(self, u: Sequence, v: Sequence) -> list:
        """Product of two coordinate vectors."""
        field = self.field
        add, mul = field.add, field.mul
        out = self.zero_vector()
        n = self.dim
        vnz = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in vnz:
                ab = mul(a, b)
                for k, c in self.mult[i * n + j]:
                    out[k] = add(out[k], mul(ab, c))
        return out

    def left_matrix(self, i: int) -> Matrix:
        """Matrix of x ↦ b_i·x."""
        with self._lock:
            m = self._left.get(i)
            if m is None:
                m = Matrix.zeros(self.field, self.dim, self.dim)
                for j in range(self.dim):
                    for k, c in self.mult[i * self.dim + j]:
                        m.rows[k][j] = c
                self._left[i] = m
            return m

    def right_matrix(self, i: int) -> Matrix:
        """Matrix of x ↦ x·b_i."""
        with self._lock:
            m = self._right.get(i)
            if m is None:
                m = Matrix.zeros(self.field, self.dim, self.dim)
                for j in range(self.dim):
                    for k, c in self.mult[j * self.dim + i]:
                        m.rows[k][j] = c
                self._right[i] = m
            return m

    def _combine(self, coords: Sequence, getter) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, a in enumerate(coords):
            if a:
                mat = getter(i)
                for r, row in enumerate(mat.rows):
                    self.field.addmul_row(out.rows[r], row, a)
        return out

    def left_mult(self, u: Sequence) -> Matrix:
        return self._combine(u, self.left_matrix)

    def right_mult(self, u: Sequence) -> Matrix:
        return self._combine(u, self.right_matrix)

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, [self.field.coerce(c) for c in coords])

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(i))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, list(self.unit))

    def is_commutative(self) -> bool:
        n = self.dim
        return all(
            self.mult[i * n + j] == self.mult[j * n + i]
            for i in range(n) for j in range(i + 1, n)
        )

    def format_vector(self, v: Sequence) -> str:
        """Human readable linear combination of basis labels."""
        fmt = self.field.format
        terms = []
        for label, c in zip(self.labels, v):
            if not c:
                continue
            text = fmt(c)
            if text == "1":
                terms.append(label)
            elif text == "-1":
                terms.append(f"-{label}")
            elif " " in text:
                terms.append(f"({text})*{label}")
            else:
                terms.append(f"{text}*{label}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"<Algebra {self.name} dim={self.dim} over {self.descriptor.label()}>"


class AlgebraElement:
    """An element of an algebra in coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: Sequence):
        if len(coords) != algebra.dim:
            raise ShapeMismatch(f"{len(coords)} coordinates for dimension {algebra.dim}")
        self.algebra = algebra
        self.coords = list(coords)

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            if other.algebra.descriptor != self.algebra.descriptor:
                raise MixedFields("elements of algebras over different fields")
            raise ShapeMismatch("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        add = self.algebra.field.add
        return AlgebraElement(self.algebra, [add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        sub = self.algebra.field.sub
        return AlgebraElement(self.algebra, [sub(a, b) for a, b in zip(self.coords, other.coords)])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.multiply(self.coords, other.coords))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __neg__(self) -> "AlgebraElement":
        neg = self.algebra.field.neg
        return AlgebraElement(self.algebra, [neg(a) for a in self.coords])

    def scale(self, c) -> "AlgebraElement":
        field = self.algebra.field
        c = field.coerce(c)
        return AlgebraElement(self.algebra, [field.mul(c, a) for a in self.coords])

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self) -> int:
        return hash(tuple(self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return self.algebra.format_vector(self.coords)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_algebra(algebra: Algebra) -> ValidationReport:
    """
    Check the unit law and associativity on every basis triple.

    Args:
        algebra: Algebra to check

    Returns:
        ValidationReport; each violation carries the witnessing indices
    """
    report = ValidationReport(subject=f"algebra {algebra.name}")
    n = algebra.dim
    for i in range(n):
        e = algebra.basis_vector(i)
        if algebra.multiply(algebra.unit, e) != e:
            report.add("left unit", [i])
        if algebra.multiply(e, algebra.unit) != e:
            report.add("right unit", [i])
    field = algebra.field
    for i in range(n):
        li = algebra.left_matrix(i)
        for j in range(n):
            lhs = li @ algebra.left_matrix(j)
            rhs = algebra.left_mult(algebra.product_vector(i, j))
            if lhs != rhs:
                for k in range(n):
                    if lhs.column(k) != rhs.column(k):
                        report.add("associativity", [i, j, k],
                                   f"({algebra.labels[i]}·{algebra.labels[j]})·{algebra.labels[k]}")
                        break
    if report.ok:
        logger.debug(f"{algebra.name} over {field.descriptor.label()} is a valid algebra")
    return report


def check_algebra_map(source: Algebra, target: Algebra, phi: Matrix) -> List[Tuple[int, int]]:
    """
    Basis pairs where phi fails to be multiplicative, plus (-1, -1) if phi(1) != 1.

    Args:
        phi: target.dim x source.dim matrix
    """
    failures = []
    if phi.apply(source.unit) != list(target.unit):
        failures.append((-1, -1))
    images = [phi.column(i) for i in range(source.dim)]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = phi.apply(source.product_vector(i, j))
            if lhs != target.multiply(images[i], images[j]):
                failures.append((i, j))
    return failures


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def opposite(algebra: Algebra) -> Algebra:
    """A^op with a*b = ba; opposite(opposite(A)) is A itself."""
    with algebra._lock:
        if algebra._opposite is not None:
            return algebra._opposite
    n = algebra.dim
    mult = [algebra.mult[j * n + i] for i in range(n) for j in range(n)]
    op = Algebra(algebra.field, algebra.labels, algebra.unit, mult, name=f"{algebra.name}^op")
    op.frobenius_hint = algebra.frobenius_hint
    op._opposite = algebra
    with algebra._lock:
        algebra._opposite = op
    return op


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """A ⊗ B with (a⊗b)(c⊗d) = ac ⊗ bd and basis index i·dim B + j."""
    if a.descriptor != b.descriptor:
        raise MixedFields(f"{a.descriptor.label()} vs {b.descriptor.label()}")
    field = a.field
    mul = field.mul
    na, nb = a.dim, b.dim
    n = na * nb
    # Loop order (i, j, k, l) enumerates the pairs (i·nb + j, k·nb + l) row-major
    table: List[SparseVector] = []
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                for l in range(nb):
                    acc: Dict[int, object] = {}
                    for p, cp in a.mult[i * na + k]:
                        for q, cq in b.mult[j * nb + l]:
                            idx = p * nb + q
                            acc[idx] = field.add(acc.get(idx, field.zero), mul(cp, cq))
                    table.append(sorted((idx, v) for idx, v in acc.items() if v))
    labels = [f"{x}⊗{y}" for x in a.labels for y in b.labels]
    unit = kronecker(Matrix(field, na, 1, [[u] for u in a.unit]),
                     Matrix(field, nb, 1, [[u] for u in b.unit])).column(0)
    result = Algebra(field, labels, unit, table, name=f"{a.name}⊗{b.name}")
    result.factors = (a, b)
    if a.frobenius_hint is not None and b.frobenius_hint is not None:
        result.frobenius_hint = [mul(x, y) for x in a.frobenius_hint for y in b.frobenius_hint]
    logger.debug(f"built tensor algebra {result.name} of dimension {n}")
    return result


def enveloping(algebra: Algebra) -> Algebra:
    """A^e = A ⊗ A^op, cached on the algebra."""
    with algebra._lock:
        if algebra._enveloping is not None:
            return algebra._enveloping
    env = tensor_algebra(algebra, opposite(algebra))
    env.name = f"{algebra.name}^e"
    with algebra._lock:
        algebra._enveloping = env
    return env


def regular_module(algebra: Algebra, side: str = "left"):
    """
    A as a module over itself.

    left: module over A with action L_{b_i}; right: module over A^op with
    action x ↦ x·b_i.
    """
    from src.modrep import Module

    if side == "left":
        return Module(algebra, [algebra.left_matrix(i) for i in range(algebra.dim)],
                      name=f"{algebra.name}_reg")
    if side == "right":
        return Module(opposite(algebra), [algebra.right_matrix(i) for i in range(algebra.dim)],
                      name=f"{algebra.name}_reg_right")
    raise ValueError(f"side must be 'left' or 'right', got '{side}'")


def algebra_generators(algebra: Algebra) -> List[int]:
    """
    Basis indices that generate A as a unital algebra, chosen greedily in basis order.

    A module action is determined by the action of these generators, so
    intertwiner systems only need them.
    """
    with algebra._lock:
        if algebra._generators is not None:
            return algebra._generators
    gens: List[int] = []
    span = _closure(algebra, gens)
    for i in range(algebra.dim):
        if span.dim == algebra.dim:
            break
        if not span.contains(algebra.basis_vector(i)):
            gens.append(i)
            span = _closure(algebra, gens)
    with algebra._lock:
        algebra._generators = gens
    logger.debug(f"{algebra.name} is generated by {[algebra.labels[g] for g in gens]}")
    return gens


def _closure(algebra: Algebra, gens: Sequence[int]) -> Subspace:
    span = Subspace(algebra.field, algebra.dim, [algebra.unit])
    frontier = [list(algebra.unit)]
    mats = [algebra.left_matrix(g) for g in gens]
    while frontier:
        nxt = []
        for v in frontier:
            for m in mats:
                w = m.apply(v)
                if span.extend(w):
                    nxt.append(w)
        frontier = nxt
    return span


def quotient_algebra(algebra: Algebra, ideal: Sequence[Sequence]) -> Tuple[Algebra, Matrix, List[int]]:
    """
    A / I for a two-sided ideal I given by spanning vectors.

    Returns:
        Tuple of (quotient algebra, projection matrix A → A/I, indices of the
        basis vectors of A whose images form the quotient basis)
    """
    field = algebra.field
    sub = Subspace(field, algebra.dim, ideal)
    pivot_set = set(sub.pivots)
    keep = [i for i in range(algebra.dim) if i not in pivot_set]

    def project(v: Sequence) -> list:
        r = sub.reduce(v)
        return [r[i] for i in keep]

    proj = Matrix.from_columns(field, [project(algebra.basis_vector(j)) for j in range(algebra.dim)],
                               len(keep))
    products = [[project(algebra.product_vector(i, j)) for j in keep] for i in keep]
    quotient = Algebra.from_products(field, [algebra.labels[i] for i in keep],
                                     project(algebra.unit), products, name=f"{algebra.name}/J")
    return quotient, proj, keep


def trace_form(algebra: Algebra) -> Matrix:
    """T[i][j] = Tr(L_{b_i b_j}), computed from the traces of the L_l."""
    with algebra._lock:
        if algebra._trace_form is not None:
            return algebra._trace_form
    field = algebra.field
    traces = []
    for l in range(algebra.dim):
        m = algebra.left_matrix(l)
        acc = field.zero
        for k in range(algebra.dim):
            acc = field.add(acc, m.rows[k][k])
        traces.append(acc)
    form = gram_matrix(algebra, traces)
    with algebra._lock:
        algebra._trace_form = form
    return form


def gram_matrix(algebra: Algebra, functional: Sequence) -> Matrix:
    """G[i][j] = f(b_i b_j)."""
    field = algebra.field
    n = algebra.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = field.zero
            for k, c in algebra.mult[i * n + j]:
                if functional[k]:
                    acc = field.add(acc, field.mul(c, functional[k]))
            row.append(acc)
        rows.append(row)
    return Matrix(field, n, n, rows)


def frobenius_functional(algebra: Algebra, seed: int = 20240601, retries: int = 64) -> list:
    """
    A functional f whose form (a, b) ↦ f(ab) is nondegenerate.

    Tries the known hint first (Hopf integrals set one), then every dual
    basis functional, then seeded random combinations.

    Raises:
        NotSelfInjective: nothing nondegenerate was found
    """
    field = algebra.field
    candidates = []
    if algebra.frobenius_hint is None and algebra.factors is not None:
        fa = frobenius_functional(algebra.factors[0], seed, retries)
        fb = frobenius_functional(algebra.factors[1], seed, retries)
        algebra.frobenius_hint = [field.mul(x, y) for x in fa for y in fb]
    if algebra.frobenius_hint is None and algebra._opposite is not None:
        algebra.frobenius_hint = algebra._opposite.frobenius_hint
    if algebra.frobenius_hint is not None:
        candidates.append(list(algebra.frobenius_hint))
    candidates.extend(algebra.basis_vector(k) for k in range(algebra.dim))
    for f in candidates:
        if is_invertible(gram_matrix(algebra, f)):
            algebra.frobenius_hint = f
            return f
    rng = random.Random(seed)
    for _ in range(retries):
        f = [field.random(rng) for _ in range(algebra.dim)]
        if is_invertible(gram_matrix(algebra, f)):
            algebra.frobenius_hint = f
            return f
    raise NotSelfInjective(f"no nondegenerate Frobenius functional found for {algebra.name}")
