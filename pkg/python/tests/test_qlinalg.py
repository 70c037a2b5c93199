from fractions import Fraction

import pytest
import sympy

from lrcoh.errors import DimensionMismatchError
from lrcoh.qlinalg import QMatrix, RowSpace, kernel_basis, rank, solve


def random_matrix(rng, rows, cols, density=0.5):
    return [
        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < density else Fraction(0)
         for _ in range(cols)]
        for _ in range(rows)
    ]


def test_identity_rank_and_kernel():
    I = QMatrix.identity(4)
    assert rank(I) == 4
    assert kernel_basis(I) == []


def test_rank_matches_sympy(rng):
    for _ in range(25):
        rows = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        assert rank(QMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


def test_kernel_vectors_are_annihilated(rng):
    for _ in range(20):
        rows = random_matrix(rng, rng.randint(1, 6), rng.randint(2, 8))
        M = QMatrix.from_rows(rows)
        basis = kernel_basis(M)
        assert len(basis) == M.cols - rank(M)
        for v in basis:
            assert all(x == 0 for x in M.apply(v))


def test_solve_consistent_and_inconsistent():
    M = QMatrix.from_rows([[1, 2], [2, 4]])
    x = solve(M, [3, 6])
    assert M.apply(x) == (3, 6)
    assert solve(M, [1, 0]) is None


def test_solve_random_right_sides(rng):
    for _ in range(20):
        rows = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        M = QMatrix.from_rows(rows)
        x0 = [Fraction(rng.randint(-5, 5)) for _ in range(M.cols)]
        b = M.apply(x0)
        x = solve(M, b)
        assert x is not None
        assert M.apply(x) == b


def test_zero_matrix_kernel_is_everything():
    M = QMatrix(2, 3)
    assert rank(M) == 0
    assert len(kernel_basis(M)) == 3


def test_rowspace_span_test():
    space = RowSpace(3)
    assert space.add({0: 1, 1: 1})
    assert space.add({1: 1, 2: 1})
    assert space.contains({0: 1, 2: -1})
    assert not space.add({0: 2, 1: 4, 2: 2})
    assert space.rank == 2


def test_dimension_mismatch():
    M = QMatrix.from_rows([[1, 0], [0, 1]])
    with pytest.raises(DimensionMismatchError):
        M.apply([1, 2, 3])
    with pytest.raises(DimensionMismatchError):
        solve(M, [1])
    with pytest.raises(DimensionMismatchError):
        QMatrix(1, 1, {(2, 0): 1})
