from fractions import Fraction

import pytest

from src.graph_derham.exact_linalg import (
    RationalMatrix,
    image_basis,
    inverse,
    is_independent,
    kernel_basis,
    project_orthogonal,
    rank,
    reduced_row_echelon,
    solve,
    span_contains,
    spans_equal,
    stack_columns,
    stack_rows,
    to_vector,
)


def test_rank_and_kernel():
    m = RationalMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1
    assert kernel_basis(m) == [to_vector([-2, 1])]

    m = RationalMatrix.from_rows([[1, 2, 3]])
    assert kernel_basis(m) == [to_vector([-2, 1, 0]), to_vector([-3, 0, 1])]


def test_rank_of_empty_shapes():
    assert rank(RationalMatrix.zeros(0, 3)) == 0
    assert rank(RationalMatrix.zeros(3, 0)) == 0
    assert len(kernel_basis(RationalMatrix.zeros(0, 3))) == 3
    assert image_basis(RationalMatrix.zeros(0, 2)) == []


def test_reduced_row_echelon():
    m = RationalMatrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    reduced, pivots = reduced_row_echelon(m)
    assert pivots == [0, 1]
    assert reduced == [
        [Fraction(1), Fraction(0), Fraction(-1)],
        [Fraction(0), Fraction(1), Fraction(2)],
    ]


def test_solve():
    m = RationalMatrix.from_rows([[2, 0], [0, 3]])
    assert solve(m, [1, 1]) == (Fraction(1, 2), Fraction(1, 3))
    assert solve(RationalMatrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None
    with pytest.raises(ValueError):
        solve(m, [1, 2, 3])


def test_inverse():
    m = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert inverse(m) == RationalMatrix.from_rows([[-2, 1], ["3/2", "-1/2"]])
    with pytest.raises(ValueError):
        inverse(RationalMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        inverse(RationalMatrix.from_rows([[1, 2, 3]]))


def test_hilbert_inverse_is_exact():
    n = 5
    hilbert = RationalMatrix.from_rows([[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
    assert (hilbert @ inverse(hilbert)).is_identity()
    assert inverse(hilbert).entries[0][0] == 25


def test_random_integer_matrices(rng):
    for _ in range(50):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = RationalMatrix.from_rows([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        r = rank(m)
        assert r == rank(m.transpose())
        kernel = kernel_basis(m)
        assert len(kernel) + r == cols
        assert all(not any(m.apply(k)) for k in kernel)
        assert len(image_basis(m)) == r


def test_matrix_arithmetic_shapes():
    a = RationalMatrix.from_rows([[1, 2]])
    b = RationalMatrix.from_rows([[3], [4]])
    assert (a @ b) == RationalMatrix.from_rows([[11]])
    assert stack_rows(a, a).shape == (2, 2)
    assert stack_columns(b, b).shape == (2, 2)
    with pytest.raises(ValueError):
        a @ a
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        RationalMatrix(1, 2, ((Fraction(1),),))


def test_span_helpers():
    assert is_independent([[1, 0, 0], [0, 1, 0]], 3)
    assert not is_independent([[1, 2], [2, 4]], 2)
    assert spans_equal([[1, 1], [1, -1]], [[1, 0], [0, 1]], 2)
    assert span_contains([[1, 1, 0]], [2, 2, 0], 3)
    assert not span_contains([[1, 1, 0]], [1, 0, 0], 3)
    assert spans_equal([], [], 4)


def test_project_orthogonal():
    assert project_orthogonal([1, 0], [[1, 1]]) == (Fraction(1, 2), Fraction(1, 2))
    # 一次従属な生成系でも射影は同じ
    assert project_orthogonal([1, 0], [[1, 1], [2, 2]]) == (Fraction(1, 2), Fraction(1, 2))
    assert project_orthogonal([3, 4], []) == (0, 0)
