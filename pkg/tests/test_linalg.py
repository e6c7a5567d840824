from fractions import Fraction

import pytest

from src.errors import MixedFields, NoSolution, NotInvertible, ShapeMismatch
from src.linalg import (
    Matrix,
    Subspace,
    image_basis,
    inverse,
    is_invertible,
    kernel_basis,
    kronecker,
    rank,
    rref,
    rref_rows,
    solve,
    solve_matrix,
)


def test_rank_and_kernel(Q):
    m = Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    k = kernel_basis(m)
    assert k.shape == (3, 1)
    assert (m @ k).is_zero()
    assert image_basis(m).shape == (3, 2)


def test_rref_pivots(Q):
    m = Matrix.from_rows(Q, [[0, 2, 4], [1, 1, 1]])
    r, pivots, rk = rref(m)
    assert pivots == [0, 1]
    assert rk == 2
    assert r.rows[0] == [1, 0, Fraction(-1)]
    assert r.rows[1] == [0, 1, 2]


def test_inverse_roundtrip(F7):
    m = Matrix.from_rows(F7, [[1, 2], [3, 4]])
    inv = inverse(m)
    assert (m @ inv).is_identity()
    assert (inv @ m).is_identity()
    singular = Matrix.from_rows(F7, [[1, 2], [2, 4]])
    assert not is_invertible(singular)
    with pytest.raises(NotInvertible):
        inverse(singular)


def test_solve(Q):
    m = Matrix.from_rows(Q, [[1, 1], [1, -1]])
    x = solve(m, [3, 1])
    assert x == [2, 1]
    with pytest.raises(NoSolution):
        solve(Matrix.from_rows(Q, [[1, 1], [2, 2]]), [1, 3])
    with pytest.raises(ShapeMismatch):
        solve(m, [1, 2, 3])


def test_solve_matrix(Q):
    m = Matrix.from_rows(Q, [[2, 0], [0, 4]])
    b = Matrix.from_rows(Q, [[2, 4], [4, 8]])
    x = solve_matrix(m, b)
    assert m @ x == b


def test_empty_shapes(Q):
    empty = Matrix.zeros(Q, 0, 3)
    assert rank(empty) == 0
    assert kernel_basis(empty).shape == (3, 3)
    assert Matrix.zeros(Q, 2, 0).transpose().shape == (0, 2)
    assert (Matrix.zeros(Q, 2, 0) @ Matrix.zeros(Q, 0, 3)).is_zero()


def test_kronecker(Q):
    a = Matrix.from_rows(Q, [[1, 2]])
    b = Matrix.from_rows(Q, [[0, 1], [1, 0]])
    k = kronecker(a, b)
    assert k.shape == (2, 4)
    assert k.rows == [[0, 1, 0, 2], [1, 0, 2, 0]]


def test_mixed_fields(Q, F7):
    with pytest.raises(MixedFields):
        Matrix.identity(Q, 2) @ Matrix.identity(F7, 2)


def test_subspace(Q):
    s = Subspace(Q, 3, [[1, 1, 0], [0, 1, 1]])
    assert s.dim == 2
    assert s.contains([1, 2, 1])
    assert not s.contains([0, 0, 1])
    assert s.extend([0, 0, 1])
    assert not s.extend([1, 0, 0])
    reps = Subspace(Q, 3, [[1, 0, 0]]).complement_representatives([[2, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert reps == [[0, 1, 0]]


def test_power_and_transpose(F7):
    m = Matrix.from_rows(F7, [[0, 1], [6, 0]])
    assert m.power(4).is_identity()
    assert not m.power(2).is_identity()
    assert m.T.T == m


def test_rref_rows_rank_deficient(Q, F7):
    rows = [[2, 4, 6, 8], [1, 3, 5, 7], [3, 7, 11, 15]]
    reduced, pivots = rref_rows(Q, Matrix.from_rows(Q, rows).rows, 4)
    assert pivots == [0, 1]
    assert reduced == [[1, 0, -1, -2], [0, 1, 2, 3]]
    reduced, pivots = rref_rows(F7, Matrix.from_rows(F7, rows).rows, 4)
    assert pivots == [0, 1]
    assert reduced == [[1, 0, 6, 5], [0, 1, 2, 3]]


def test_rref_rows_keeps_inconsistent_residue(Q):
    reduced, pivots = rref_rows(Q, Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 7]]).rows, 3, stop_col=2)
    assert pivots == [0]
    assert reduced[0] == [1, 2, 3]
    assert reduced[1][:2] == [0, 0]
    assert reduced[1][2] != 0


def test_rref_rows_over_cyclotomic_field(Q3):
    w = Q3.parse("w")
    w2 = Q3.mul(w, w)
    reduced, pivots = rref_rows(Q3, [[w, Q3.one, Q3.zero], [Q3.one, w2, Q3.one]], 3)
    assert pivots == [0, 2]
    assert reduced == [[Q3.one, w2, Q3.zero], [Q3.zero, Q3.zero, Q3.one]]
