"""Exact matrices over a field and determinants of polynomial matrices.

Indices are 0-based throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .polyring import Poly, PolyRing
from .scalars import QQ, Field, Scalar


class SelectionError(IndexError):
    """Bad row/column selection for a minor."""


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    """Rectangular matrix of field elements (immutable)."""

    field: Field
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ) -> "Matrix":
        rows = tuple(tuple(field.convert(v) for v in row) for row in rows)
        if len({len(r) for r in rows}) > 1:
            raise ShapeError("ragged rows")
        return cls(field, rows)

    @classmethod
    def zeros(cls, m: int, n: int, field: Field = QQ) -> "Matrix":
        return cls(field, tuple((field.zero,) * n for _ in range(m)))

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls(
            field,
            tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)),
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.nrows), cols)

    def mul_vector(self, v: Sequence) -> tuple:
        f = self.field
        out = []
        for row in self.rows:
            acc = f.zero
            for a, b in zip(row, v):
                acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def is_integral(self) -> bool:
        return self.field.characteristic == 0 and all(
            Fraction(v).denominator == 1 for row in self.rows for v in row
        )


def _rref_python(A: Matrix):
    f = A.field
    R = [list(r) for r in A.rows]
    m, n = A.shape
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if R[i][j] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = f.inv(R[r][j])
        R[r] = [f.mul(v, inv) for v in R[r]]
        for i in range(m):
            if i != r and R[i][j] != 0:
                c = R[i][j]
                R[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(R[i], R[r])]
        pivots.append(j)
        r += 1
    return R, pivots


def rref(A: Matrix):
    """Reduced row echelon form and pivot columns."""
    if A.field.characteristic and A.nrows and A.ncols:
        R, piv = _kernels.rref_mod_p(np.array(A.rows, dtype=np.int64), A.field.characteristic)
        return [[int(v) for v in row] for row in R], [int(j) for j in piv]
    return _rref_python(A)


def rank(A: Matrix) -> int:
    """Exact rank."""
    if A.nrows == 0 or A.ncols == 0:
        return 0
    if A.field.characteristic:
        return len(rref(A)[1])
    if A.is_integral() and _kernels.hadamard_bits(A.rows) < 62:
        arr = np.array([[int(v) for v in row] for row in A.rows], dtype=np.int64)
        return int(_kernels.int_rank_batch(arr[None])[0])
    return len(_rref_python(A)[1])


def det(A: Matrix) -> Scalar:
    if A.nrows != A.ncols:
        raise ShapeError("determinant of a non-square matrix")
    f = A.field
    n = A.nrows
    R = [list(r) for r in A.rows]
    d = f.one
    for j in range(n):
        piv = next((i for i in range(j, n) if R[i][j] != 0), None)
        if piv is None:
            return f.zero
        if piv != j:
            R[j], R[piv] = R[piv], R[j]
            d = f.neg(d)
        d = f.mul(d, R[j][j])
        inv = f.inv(R[j][j])
        for i in range(j + 1, n):
            if R[i][j] != 0:
                c = f.mul(R[i][j], inv)
                R[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(R[i], R[j])]
    return d


def minor(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Scalar:
    """Determinant of the submatrix on sorted ``rows`` x ``cols``; 1 when empty."""
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise SelectionError("minor needs as many rows as columns")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise SelectionError("repeated index in minor selection")
    if any(not 0 <= i < A.nrows for i in rows) or any(not 0 <= j < A.ncols for j in cols):
        raise SelectionError("minor selection out of range")
    if not rows:
        return A.field.one
    return det(A.submatrix(rows, cols))


def kernel_basis(A: Matrix) -> list:
    """Basis of the right null space, itself in reduced row echelon form."""
    f = A.field
    n = A.ncols
    R, pivots = rref(A)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for fc in free:
        v = [f.zero] * n
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(f.convert(R[i][fc]))
        basis.append(v)
    if not basis:
        return []
    Rk, _ = rref(Matrix(f, tuple(tuple(v) for v in basis)))
    return [tuple(f.convert(x) for x in row) for row in Rk if any(x != 0 for x in row)]


# --------------------------------------------------------------------------
# polynomial matrices
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    ring: PolyRing
    rows: tuple

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence]) -> "PolyMatrix":
        out = []
        for row in rows:
            conv = []
            for v in row:
                if isinstance(v, Poly):
                    if v.ring != ring:
                        raise ShapeError("matrix entries must share one ring")
                    conv.append(v)
                elif isinstance(v, str):
                    conv.append(ring.parse(v))
                else:
                    conv.append(ring.const(v))
            out.append(tuple(conv))
        if len({len(r) for r in out}) > 1:
            raise ShapeError("ragged rows")
        return cls(ring, tuple(out))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def select_columns(self, cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, tuple(tuple(r[j] for j in cols) for r in self.rows))

    def with_column(self, j: int, col: Sequence[Poly]) -> "PolyMatrix":
        return PolyMatrix(
            self.ring,
            tuple(tuple(col[i] if k == j else v for k, v in enumerate(r)) for i, r in enumerate(self.rows)),
        )

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def to_strings(self) -> list:
        return [[str(v) for v in r] for r in self.rows]


def det_poly_cofactor(A: PolyMatrix, row: int = 0) -> Poly:
    """Laplace expansion memoized over column subsets.

    Expands along ``row`` first, then along the remaining rows in order.
    """
    n = A.nrows
    if n != A.ncols:
        raise ShapeError("determinant of a non-square matrix")
    ring = A.ring
    if n == 0:
        return ring.one
    order = [row] + [i for i in range(n) if i != row]
    memo: dict = {}

    def rec(depth: int, cols: tuple) -> Poly:
        if depth == n:
            return ring.one
        if cols in memo:
            return memo[cols]
        r = A.rows[order[depth]]
        acc = ring.zero
        for pos, j in enumerate(cols):
            entry = r[j]
            if not entry:
                continue
            sub = rec(depth + 1, cols[:pos] + cols[pos + 1 :])
            if not sub:
                continue
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    d = rec(0, tuple(range(n)))
    # moving ``row`` to the top is a cyclic shift of ``row`` transpositions
    return -d if row % 2 else d


def det_poly_bareiss(A: PolyMatrix) -> Poly:
    """Fraction-free elimination over the polynomial ring (exact divisions)."""
    n = A.nrows
    if n != A.ncols:
        raise ShapeError("determinant of a non-square matrix")
    ring = A.ring
    if n == 0:
        return ring.one
    M = [list(r) for r in A.rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return ring.zero
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev) if prev != ring.one else num
            M[i][k] = ring.zero
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def det_poly(A: PolyMatrix) -> Poly:
    if A.nrows != A.ncols:
        raise ShapeError("determinant of a non-square matrix")
    if A.nrows <= 6:
        return det_poly_cofactor(A)
    return det_poly_bareiss(A)
