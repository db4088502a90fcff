import pytest

from waringlab import linalg
from waringlab.algebra import Scalar, I, ZERO, ONE


def S(*values):
    return [Scalar.coerce(v) for v in values]


def test_rank_and_nullspace():
    rows = [S(1, 2, 3), S(2, 4, 6), S(1, 0, 1)]
    assert linalg.rank(rows) == 2
    kernel = linalg.nullspace(rows)
    assert len(kernel) == 1
    for row in rows:
        assert sum((a * b for a, b in zip(row, kernel[0])), ZERO) == 0


def test_gaussian_rank():
    rows = [[ONE, I], [I, Scalar(-1)]]
    assert linalg.rank(rows) == 1
    assert linalg.rank([[ONE, I], [I, ONE]]) == 2


def test_solve_left():
    rows = [S(1, 0, 1), S(0, 1, 1)]
    assert linalg.solve_left(rows, S(2, 3, 5)) == S(2, 3)
    assert linalg.solve_left(rows, S(1, 1, 0)) is None
    with pytest.raises(ValueError):
        linalg.solve_left(rows, S(1, 1))


def test_inverse_and_determinant():
    matrix = [S(2, 1), S(1, 1)]
    assert linalg.inverse(matrix) == [S(1, -1), S(-1, 2)]
    assert linalg.determinant(matrix) == 1
    assert linalg.determinant([S(0, 1), S(1, 0)]) == -1
    with pytest.raises(ValueError):
        linalg.inverse([S(1, 2), S(2, 4)])


def test_right_inverse():
    rows = [S(1, 0, 2), S(0, 1, 3)]
    inverse = linalg.right_inverse(rows)
    product = [[sum((r[k] * inverse[k][j] for k in range(3)), ZERO) for j in range(2)] for r in rows]
    assert product == [S(1, 0), S(0, 1)]


def test_rref_identifies_row_spaces():
    assert linalg.row_space_key([S(1, 1, 0), S(0, 1, 1)]) == linalg.row_space_key([S(1, 2, 1), S(1, 0, -1)])
    assert linalg.left_nullspace([S(1, 1), S(2, 2)]) == [S(-2, 1)]
