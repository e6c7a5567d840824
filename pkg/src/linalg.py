"""
Exact dense linear algebra over any supported field.

Matrices hold raw field payloads row by row. Every routine is exact; there is
no tolerance anywhere. Elimination is Gauss-Jordan with deterministic pivoting
(first nonzero entry in column order), so bases come out reproducibly.
"""

from typing import Iterable, List, Optional, Sequence, Tuple

from src.errors import NoSolution, NotInvertible, ShapeMismatch, MixedFields
from src.exactfield import Field, FieldElement
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Vector = List


class Matrix:
    """
    A rows x cols matrix over a field.

    Rows are lists of payloads and are never mutated after construction;
    zero-row and zero-column matrices are legal.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Optional[List[list]] = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[field.zero] * ncols for _ in range(nrows)]
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ShapeMismatch(f"expected {nrows}x{ncols} entries")
        self.rows = rows

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        rows = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
        return cls(field, n, n, rows)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        """Build from nested values (ints, Fractions, strings, FieldElements or payloads)."""
        data = [[field.coerce(v) for v in row] for row in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def diagonal_blocks(cls, blocks: Sequence["Matrix"], field: Field) -> "Matrix":
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        out = cls.zeros(field, nrows, ncols)
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out.rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return out

    # -- access -----------------------------------------------------------

    @property
    def descriptor(self):
        return self.field.descriptor

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def __getitem__(self, key) -> FieldElement:
        i, j = key
        return self.entry(i, j)

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.rows]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def flatten(self) -> Vector:
        """Row-major list of payloads."""
        return [v for row in self.rows for v in row]

    @classmethod
    def unflatten(cls, field: Field, values: Sequence, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [list(values[i * ncols:(i + 1) * ncols]) for i in range(nrows)])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(row_idx), len(col_idx),
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def to_strings(self) -> List[List[str]]:
        fmt = self.field.format
        return [[fmt(v) for v in row] for row in self.rows]

    # -- arithmetic -------------------------------------------------------

    def _check_field(self, other: "Matrix") -> None:
        if other.field.descriptor != self.field.descriptor:
            raise MixedFields(
                f"{self.field.descriptor.label()} vs {other.field.descriptor.label()}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Matrix(self.field, self.nrows, self.ncols,
                      [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.field.sub
        return Matrix(self.field, self.nrows, self.ncols,
                      [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.nrows, self.ncols, [[neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, self.nrows, self.ncols,
                      [[mul(c, a) if a else a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def apply(self, vector: Sequence) -> Vector:
        """Matrix-vector product on payload vectors."""
        if len(vector) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.ncols} columns")
        field = self.field
        add, mul = field.add, field.mul
        out = []
        nz = [(j, v) for j, v in enumerate(vector) if v]
        for row in self.rows:
            acc = field.zero
            for j, v in nz:
                a = row[j]
                if a:
                    acc = add(acc, mul(a, v))
            out.append(acc)
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      [list(col) for col in zip(*self.rows)] if self.nrows else
                      [[] for _ in range(self.ncols)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def hstack(self, *others: "Matrix") -> "Matrix":
        rows = [list(r) for r in self.rows]
        ncols = self.ncols
        for o in others:
            if o.nrows != self.nrows:
                raise ShapeMismatch("hstack needs equal row counts")
            for r, s in zip(rows, o.rows):
                r.extend(s)
            ncols += o.ncols
        return Matrix(self.field, self.nrows, ncols, rows)

    def vstack(self, *others: "Matrix") -> "Matrix":
        rows = [list(r) for r in self.rows]
        for o in others:
            if o.ncols != self.ncols:
                raise ShapeMismatch("vstack needs equal column counts")
            rows.extend(list(r) for r in o.rows)
        return Matrix(self.field, len(rows), self.ncols, rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one = self.field.one
        return all(
            (v == one) if i == j else (not v)
            for i, row in enumerate(self.rows) for j, v in enumerate(row)
        )

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field.descriptor == other.field.descriptor
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.descriptor.label()}, {self.to_strings()})"


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Product a·b, skipping zero entries of a."""
    a._check_field(b)
    if a.ncols != b.nrows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    field = a.field
    out = []
    brows = b.rows
    for row in a.rows:
        acc = [field.zero] * b.ncols
        for k, v in enumerate(row):
            if v:
                field.addmul_row(acc, brows[k], v)
        out.append(acc)
    return Matrix(field, a.nrows, b.ncols, out)


# ---------------------------------------------------------------------------
# Elimination on raw row lists
# ---------------------------------------------------------------------------

def _first_nonzero(work: List[list], start: int, c: int) -> Optional[int]:
    for i in range(start, len(work)):
        if work[i][c]:
            return i
    return None


def _gauss_jordan(field: Field, work: List[list], limit: int) -> List[int]:
    one = field.one
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r == len(work):
            break
        piv = _first_nonzero(work, r, c)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        if prow[c] != one:
            field.scale_row(prow, field.inv(prow[c]), c)
        for i in range(len(work)):
            if i != r:
                v = work[i][c]
                if v:
                    field.addmul_row(work[i], prow, field.neg(v), c)
        pivots.append(c)
        r += 1
    return pivots


def _fraction_free_forward(field: Field, work: List[list], limit: int) -> List[int]:
    """Echelon form by cross-multiplication, each row divided exactly by the previous pivot."""
    one = field.one
    prev = one
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r == len(work):
            break
        piv = _first_nonzero(work, r, c)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        p = prow[c]
        prev_inv = None if prev == one else field.inv(prev)
        for i in range(r + 1, len(work)):
            row = work[i]
            v = row[c]
            field.scale_row(row, p, c)
            if v:
                field.addmul_row(row, prow, field.neg(v), c)
            if prev_inv is not None:
                field.scale_row(row, prev_inv, c)
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def _normalize_back(field: Field, work: List[list], pivots: List[int]) -> None:
    """Scale pivots to one and clear above them, last pivot first."""
    one = field.one
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        prow = work[r]
        if prow[c] != one:
            field.scale_row(prow, field.inv(prow[c]), c)
        for i in range(r):
            v = work[i][c]
            if v:
                field.addmul_row(work[i], prow, field.neg(v), c)


def rref_rows(field: Field, rows: Iterable[Sequence], ncols: int,
              stop_col: Optional[int] = None) -> Tuple[List[list], List[int]]:
    """
    Reduced row echelon form of a list of payload rows.

    In characteristic 0 the forward pass is fraction-free and pivots are
    normalized on the way back; over prime fields plain Gauss-Jordan is used.

    Args:
        field: Coefficient field
        rows: Rows to reduce (copied, not mutated)
        ncols: Row length
        stop_col: Only pivot in columns < stop_col (augmented systems)

    Returns:
        Tuple of (nonzero reduced rows, pivot columns)
    """
    work = [list(r) for r in rows if any(r)]
    limit = ncols if stop_col is None else stop_col
    if field.characteristic == 0:
        pivots = _fraction_free_forward(field, work, limit)
        _normalize_back(field, work, pivots)
    else:
        pivots = _gauss_jordan(field, work, limit)
    r = len(pivots)
    return work[:r] + [row for row in work[r:] if any(row)], pivots


def kernel_vectors(field: Field, rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of {v : row·v = 0 for every row}, one vector per free column."""
    reduced, pivots = rref_rows(field, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            if reduced[i][f]:
                v[p] = field.neg(reduced[i][f])
        basis.append(v)
    return basis


def span_basis(field: Field, vectors: Iterable[Sequence], length: int) -> List[Vector]:
    """Echelon basis of the span of some vectors."""
    reduced, pivots = rref_rows(field, vectors, length)
    return reduced[:len(pivots)]


# ---------------------------------------------------------------------------
# Public matrix operations
# ---------------------------------------------------------------------------

def rref(m: Matrix) -> Tuple[Matrix, List[int], int]:
    """
    Reduced row echelon form.

    Returns:
        Tuple of (R with the same shape as m, pivot columns, rank)
    """
    reduced, pivots = rref_rows(m.field, m.rows, m.ncols)
    reduced = reduced[:len(pivots)]
    reduced += [[m.field.zero] * m.ncols for _ in range(m.nrows - len(reduced))]
    return Matrix(m.field, m.nrows, m.ncols, reduced), pivots, len(pivots)


def rank(m: Matrix) -> int:
    return len(rref_rows(m.field, m.rows, m.ncols)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of m."""
    vecs = kernel_vectors(m.field, m.rows, m.ncols)
    return Matrix.from_columns(m.field, vecs, m.ncols)


def image_basis(m: Matrix) -> Matrix:
    """Columns of m at the pivot positions: a basis of the column space."""
    _, pivots = rref_rows(m.field, m.rows, m.ncols)
    return m.submatrix(range(m.nrows), pivots)


def solve(m: Matrix, b: Sequence) -> Vector:
    """
    One solution x of m·x = b.

    Raises:
        ShapeMismatch: len(b) != rows of m
        NoSolution: the system is inconsistent
    """
    if len(b) != m.nrows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {m.nrows} rows")
    field = m.field
    b = [field.coerce(v) for v in b]
    x = solve_columns(field, m.rows, m.ncols, [b])
    return x[0]


def solve_columns(field: Field, rows: Sequence[Sequence], ncols: int,
                  rhs_columns: Sequence[Sequence]) -> List[Vector]:
    """Solve rows·x = c for several right-hand side columns c at once."""
    nrhs = len(rhs_columns)
    aug = [list(r) + [c[i] for c in rhs_columns] for i, r in enumerate(rows)]
    reduced, pivots = rref_rows(field, aug, ncols + nrhs, stop_col=ncols)
    for row in reduced[len(pivots):]:
        if any(row[ncols:]):
            raise NoSolution("linear system is inconsistent")
    sols = []
    for t in range(nrhs):
        x = [field.zero] * ncols
        for i, p in enumerate(pivots):
            x[p] = reduced[i][ncols + t]
        sols.append(x)
    return sols


def solve_matrix(m: Matrix, b: Matrix) -> Matrix:
    """X with m·X = b."""
    if b.nrows != m.nrows:
        raise ShapeMismatch(f"cannot solve {m.shape} against {b.shape}")
    cols = solve_columns(m.field, m.rows, m.ncols, b.columns())
    return Matrix.from_columns(m.field, cols, m.ncols)


def inverse(m: Matrix) -> Matrix:
    """
    Inverse of a square matrix.

    Raises:
        ShapeMismatch: m is not square
        NotInvertible: m is singular
    """
    if m.nrows != m.ncols:
        raise ShapeMismatch(f"inverse of non-square {m.shape}")
    n = m.nrows
    field = m.field
    ident = Matrix.identity(field, n)
    aug = [list(r) + list(s) for r, s in zip(m.rows, ident.rows)]
    reduced, pivots = rref_rows(field, aug, 2 * n, stop_col=n)
    if pivots != list(range(n)):
        raise NotInvertible(f"matrix of rank {len(pivots)} < {n}")
    return Matrix(field, n, n, [row[n:] for row in reduced[:n]])


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row (i, k) ↦ i·b.nrows + k, column (j, l) ↦ j·b.ncols + l."""
    a._check_field(b)
    field = a.field
    mul = field.mul
    rows = []
    for arow in a.rows:
        for brow in b.rows:
            row = []
            for x in arow:
                if x:
                    row.extend(mul(x, y) if y else field.zero for y in brow)
                else:
                    row.extend([field.zero] * b.ncols)
            rows.append(row)
    return Matrix(field, a.nrows * b.nrows, a.ncols * b.ncols, rows)


class Subspace:
    """
    A subspace of F^n held as an echelon basis.

    Coordinates are taken with respect to the echelon basis, so a vector of
    the subspace has coordinates equal to its entries at the pivot columns.
    """

    def __init__(self, field: Field, length: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.length = length
        reduced, pivots = rref_rows(field, vectors, length)
        self.basis: List[Vector] = reduced[:len(pivots)]
        self.pivots: List[int] = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of v after clearing every pivot column."""
        field = self.field
        r = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = r[p]
            if c:
                field.addmul_row(r, row, field.neg(c))
        return r

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        if not self.contains(v):
            raise NoSolution("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def extend(self, v: Sequence) -> bool:
        """Add v to the subspace; returns False when v was already inside."""
        r = self.reduce(v)
        if not any(r):
            return False
        reduced, pivots = rref_rows(self.field, self.basis + [r], self.length)
        self.basis = reduced[:len(pivots)]
        self.pivots = pivots
        return True

    def complement_representatives(self, vectors: Iterable[Sequence]) -> List[Vector]:
        """Pick vectors whose classes form a basis of span(self ∪ vectors) / self."""
        chosen = []
        scratch = Subspace(self.field, self.length, self.basis)
        for v in vectors:
            if scratch.extend(v):
                chosen.append(list(v))
        return chosen
