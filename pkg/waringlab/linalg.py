"""Exact linear algebra over Q and Q(i).

Rows are cleared of denominators and reduced with fraction-free (Bareiss)
elimination on integers, or on Gaussian integers stored as (re, im) pairs
when any entry is non-real. Pivots are chosen column by column in row order
so every result is deterministic.
"""
import math
import typing
import logging

from .algebra import Scalar, ZERO, ONE

LOGGER = logging.getLogger(__name__)

Matrix = typing.List[typing.List[Scalar]]
GaussianInt = typing.Tuple[int, int]


def _gaussian_mul(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gaussian_sub(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return (a[0] - b[0], a[1] - b[1])


def _gaussian_div(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    norm = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    assert re % norm == 0 and im % norm == 0, "Bareiss division was not exact"
    return (re // norm, im // norm)


def _int_div(a: int, b: int) -> int:
    quotient, remainder = divmod(a, b)
    assert remainder == 0, "Bareiss division was not exact"
    return quotient


def _clear_denominators(rows: typing.Sequence[typing.Sequence[Scalar]], real: bool):
    cleared = []
    for row in rows:
        scale = 1
        for entry in row:
            scale = math.lcm(scale, entry.re.denominator, entry.im.denominator)
        if real:
            cleared.append([int(entry.re * scale) for entry in row])
        else:
            cleared.append([(int(entry.re * scale), int(entry.im * scale)) for entry in row])
    return cleared


def _bareiss(rows: typing.Sequence[typing.Sequence[Scalar]], ncols: int):
    """Fraction-free row echelon form; returns (integer rows, pivot columns, real flag)."""
    real = all(entry.is_real for row in rows for entry in row)
    work = _clear_denominators(rows, real)
    if real:
        zero, one = 0, 1
        mul, sub, div = (lambda a, b: a * b), (lambda a, b: a - b), _int_div
    else:
        zero, one = (0, 0), (1, 0)
        mul, sub, div = _gaussian_mul, _gaussian_sub, _gaussian_div
    nrows = len(work)
    previous = one
    rank = 0
    pivots: typing.List[int] = []
    for col in range(ncols):
        if rank == nrows:
            break
        pivot_row = next((i for i in range(rank, nrows) if work[i][col] != zero), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        top = work[rank]
        pivot = top[col]
        for i in range(rank + 1, nrows):
            row = work[i]
            lead = row[col]
            for j in range(col + 1, ncols):
                row[j] = div(sub(mul(pivot, row[j]), mul(lead, top[j])), previous)
            row[col] = zero
        previous = pivot
        pivots.append(col)
        rank += 1
    return work[:rank], pivots, real


def _to_scalar(entry, real: bool) -> Scalar:
    return Scalar(entry) if real else Scalar(entry[0], entry[1])


def _width(rows: typing.Sequence[typing.Sequence[Scalar]], ncols: typing.Optional[int]) -> int:
    if ncols is not None:
        return ncols
    if not rows:
        raise ValueError("Cannot infer the column count of an empty matrix.")
    return len(rows[0])


def transpose(rows: typing.Sequence[typing.Sequence[Scalar]], ncols: typing.Optional[int] = None) -> Matrix:
    width = _width(rows, ncols) if rows or ncols is not None else 0
    return [[row[j] for row in rows] for j in range(width)]


def rank(rows: typing.Sequence[typing.Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    _, pivots, _ = _bareiss(rows, len(rows[0]))
    return len(pivots)


def echelon(
    rows: typing.Sequence[typing.Sequence[Scalar]], ncols: typing.Optional[int] = None
) -> typing.Tuple[Matrix, typing.List[int]]:
    """Row echelon form (unnormalized) and its pivot columns."""
    if not rows:
        return [], []
    reduced, pivots, real = _bareiss(rows, _width(rows, ncols))
    return [[_to_scalar(e, real) for e in row] for row in reduced], pivots


def nullspace(
    rows: typing.Sequence[typing.Sequence[Scalar]], ncols: typing.Optional[int] = None
) -> Matrix:
    """Basis of {v : rows v = 0}, one vector per free column (that entry set to one)."""
    width = _width(rows, ncols)
    reduced, pivots = echelon(rows, width)
    free = [j for j in range(width) if j not in set(pivots)]
    basis = []
    for f in free:
        vector = [ZERO] * width
        vector[f] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            row, p = reduced[k], pivots[k]
            total = ZERO
            for j in range(p + 1, width):
                if not vector[j].is_zero and not row[j].is_zero:
                    total = total + row[j] * vector[j]
            vector[p] = -total / row[p]
        basis.append(vector)
    return basis


def left_nullspace(rows: typing.Sequence[typing.Sequence[Scalar]]) -> Matrix:
    """Basis of {z : sum_i z_i rows_i = 0}."""
    if not rows:
        return []
    return nullspace(transpose(rows), ncols=len(rows))


def solve_left(
    rows: typing.Sequence[typing.Sequence[Scalar]], target: typing.Sequence[Scalar]
) -> typing.Optional[typing.List[Scalar]]:
    """Coefficients c with sum_i c_i rows_i = target, or None if target is not in the row span."""
    if not rows:
        return [] if all(t.is_zero for t in target) else None
    if any(len(row) != len(target) for row in rows):
        raise ValueError("Rows and target have different lengths.")
    columns = transpose(list(rows) + [list(target)])
    reduced, pivots = echelon(columns, len(rows) + 1)
    if len(rows) in pivots:
        return None
    # the target column is free: back-substitute with it set to -1
    width = len(rows) + 1
    vector = [ZERO] * width
    vector[-1] = -ONE
    for k in range(len(pivots) - 1, -1, -1):
        row, p = reduced[k], pivots[k]
        total = ZERO
        for j in range(p + 1, width):
            if not vector[j].is_zero and not row[j].is_zero:
                total = total + row[j] * vector[j]
        vector[p] = -total / row[p]
    return vector[:-1]


def rref(rows: typing.Sequence[typing.Sequence[Scalar]], ncols: typing.Optional[int] = None) -> Matrix:
    """Reduced row echelon form with unit pivots (a canonical basis of the row space)."""
    reduced, pivots = echelon(rows, ncols)
    result = [[entry / row[p] for entry in row] for row, p in zip(reduced, pivots)]
    for k in range(len(result) - 1, -1, -1):
        p = pivots[k]
        for i in range(k):
            factor = result[i][p]
            if not factor.is_zero:
                result[i] = [a - factor * b for a, b in zip(result[i], result[k])]
    return result


def row_space_key(rows: typing.Sequence[typing.Sequence[Scalar]]) -> typing.Tuple:
    """Hashable, sortable identifier of a row space."""
    return tuple(tuple(entry.sort_key() for entry in row) for row in rref(rows))


def inverse(rows: typing.Sequence[typing.Sequence[Scalar]]) -> Matrix:
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("Only square matrices can be inverted.")
    augmented = [
        list(row) + [ONE if i == j else ZERO for j in range(size)] for i, row in enumerate(rows)
    ]
    reduced = rref(augmented, 2 * size)
    if len(reduced) < size or any(reduced[i][i] != ONE for i in range(size)):
        raise ValueError("Matrix is singular.")
    return [row[size:] for row in reduced]


def right_inverse(rows: typing.Sequence[typing.Sequence[Scalar]]) -> Matrix:
    """A matrix A with rows * A = identity, for rows of full row rank."""
    size, width = len(rows), len(rows[0])
    _, pivots = echelon(rows, width)
    if len(pivots) < size:
        raise ValueError("Rows are linearly dependent.")
    square = [[row[p] for p in pivots] for row in rows]
    inv = inverse(square)
    result = [[ZERO] * size for _ in range(width)]
    for k, p in enumerate(pivots):
        result[p] = list(inv[k])
    return result


def determinant(rows: typing.Sequence[typing.Sequence[Scalar]]) -> Scalar:
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("Determinants need square matrices.")
    work = [list(row) for row in rows]
    result = ONE
    for col in range(size):
        pivot_row = next((i for i in range(col, size) if not work[i][col].is_zero), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            result = -result
        pivot = work[col][col]
        result = result * pivot
        for i in range(col + 1, size):
            factor = work[i][col] / pivot
            if not factor.is_zero:
                work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
    return result
