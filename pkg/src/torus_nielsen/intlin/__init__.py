"""
Exact integer linear algebra: Smith normal form with transforms, kernels,
cokernels, determinants, unimodular completion and lattice membership.

Everything here works on Python integers, so no entry ever overflows.

Examples:
    >>> M = IntMatrix.from_rows([[2, 4], [6, 8]])
    >>> snf = smith_normal_form(M)
    >>> snf.diagonal
    (2, 4)
    >>> snf.U @ M @ snf.V == snf.S
    True

    The cokernel of a 1x2 matrix [0, 3] is Z/3:
    >>> cok = cokernel_structure(IntMatrix.from_rows([[0, 3]]))
    >>> cok.invariant_factors, cok.free_rank, cok.order
    ((3,), 0, 3)

    Kernels come back primitive, sign-normalised and in echelon order:
    >>> kernel_basis(IntMatrix.from_rows([[2, 4]]))
    [(2, -1)]

    >>> unimodular_complete((2, 1)).column(0)
    (2, 1)
    >>> exact_determinant(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]]))
    -3
    >>> lattice_contains(IntMatrix.from_rows([[2, 0], [0, 2]]), (1, 0))
    False
"""
from __future__ import annotations

import logging
import math
import operator
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

import sympy

from torus_nielsen.errors import (DimensionMismatch, InvariantViolation,
                                  NonPrimitiveVector, NonSquare, NotUnimodular,
                                  ZeroVector)

logger = logging.getLogger(__name__)

Vector = tuple  # tuple[int, ...]


# ═════════════════════════════ matrices ══════════════════════════════
@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, entries stored row-major.

    >>> A = IntMatrix.from_rows([[1, 1], [0, 2]])
    >>> A - IntMatrix.identity(2)
    IntMatrix(rows=2, cols=2, entries=(0, 1, 0, 1))
    >>> A @ (1, 1)
    (2, 2)
    """
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        entries = tuple(operator.index(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    # ---------- constructors ----------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]],
                  cols: Optional[int] = None) -> "IntMatrix":
        """Build from a list of rows; ``cols`` fixes the width of an empty matrix."""
        rows = [tuple(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise DimensionMismatch(f"rows have width {width}, expected {cols}")
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), width, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]],
                     rows: Optional[int] = None) -> "IntMatrix":
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    # ---------- access ----------
    def __getitem__(self, index) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def max_abs(self) -> int:
        return max((abs(e) for e in self.entries), default=0)

    # ---------- arithmetic ----------
    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)],
                                   cols=self.rows)

    def _same_shape(self, other: "IntMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other):
        """Matrix product, or matrix-vector product when ``other`` is a sequence.

        The vector may hold any numbers (e.g. Fractions); a tuple is returned.
        """
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            columns = [other.column(j) for j in range(other.cols)]
            return IntMatrix.from_rows(
                [[sum(a * b for a, b in zip(self.row(i), col)) for col in columns]
                 for i in range(self.rows)],
                cols=other.cols)
        vector = tuple(other)
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for a matrix with {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector))
                     for i in range(self.rows))

    def augment(self, column: Sequence[int]) -> "IntMatrix":
        """Append ``column`` on the right."""
        if len(column) != self.rows:
            raise DimensionMismatch(
                f"column of length {len(column)} for {self.rows} rows")
        return IntMatrix.from_rows(
            [list(self.row(i)) + [column[i]] for i in range(self.rows)],
            cols=self.cols + 1)

    def drop_column(self, j: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.row(i)[:j] + self.row(i)[j + 1:] for i in range(self.rows)],
            cols=self.cols - 1)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows, self.cols, list(self.entries))

    def __str__(self):
        return "[" + ", ".join(str(list(self.row(i))) for i in range(self.rows)) + "]"


# ═══════════════════════════ normal forms ════════════════════════════
@dataclass(frozen=True)
class SmithDecomposition:
    """U·M·V = S with U, V unimodular and S diagonal (d1 | d2 | ...)."""
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Vector:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def solve(self, v: Sequence[int]) -> Optional[Vector]:
        """Return an integer x with M·x = v, or None if v is off the column lattice.

        >>> snf = smith_normal_form(IntMatrix.from_rows([[0, 3]]))
        >>> snf.solve((6,))
        (0, 2)
        >>> snf.solve((4,)) is None
        True
        """
        if len(v) != self.U.cols:
            raise DimensionMismatch(
                f"vector of length {len(v)} for a lattice in Z^{self.U.cols}")
        w = self.U @ tuple(v)
        diagonal, r = self.diagonal, self.rank
        y = []
        for i in range(r):
            q, rem = divmod(w[i], diagonal[i])
            if rem:
                return None
            y.append(q)
        if any(w[i] for i in range(r, len(w))):
            return None
        y.extend([0] * (self.V.rows - r))
        return self.V @ tuple(y)


def _min_abs_position(A: list, t: int):
    best = None
    for i in range(t, len(A)):
        for j in range(t, len(A[i])):
            if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                best = (abs(A[i][j]), i, j)
    return None if best is None else best[1:]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The pivot at each step is the nonzero entry of least absolute value in the
    remaining block (first in row-major order on ties).

    >>> snf = smith_normal_form(IntMatrix.zeros(2, 2))
    >>> snf.S == IntMatrix.zeros(2, 2), snf.U == snf.V == IntMatrix.identity(2)
    (True, True)
    >>> smith_normal_form(IntMatrix.from_rows([[1, 0], [0, 5]])).diagonal
    (1, 5)
    """
    m, n = M.rows, M.cols
    A = M.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_columns(i, j):
        for row in A + V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_column(dst, src, q):
        for row in A + V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = _min_abs_position(A, t)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_columns(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_column(j, t, -q)
                clean = clean and A[t][j] == 0
            if not clean:
                continue
            stray = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                          if A[i][j] % p), None)
            if stray is None:
                break
            add_row(t, stray[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        if A[t][t] == 0:
            break

    snf = SmithDecomposition(IntMatrix.from_rows(U, cols=m),
                             IntMatrix.from_rows(A, cols=n),
                             IntMatrix.from_rows(V, cols=n))
    if snf.U @ M @ snf.V != snf.S:
        raise InvariantViolation(f"U·M·V != S for M = {M}")
    logger.debug("SNF of %dx%d matrix: diagonal %s", m, n, snf.diagonal)
    return snf


def matrix_rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank


def _echelon_basis(vectors: Sequence[Sequence[int]], width: int) -> list:
    """Row Hermite normal form of the lattice spanned by ``vectors``."""
    A = [list(v) for v in vectors]
    r = 0
    for c in range(width):
        while True:
            live = [i for i in range(r, len(A)) if A[i][c]]
            if not live:
                break
            p = min(live, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return [tuple(row) for row in A[:r]]


# ═══════════════════════════ derived data ════════════════════════════
@dataclass(frozen=True)
class CokernelStructure:
    """Z^rows / (column lattice): torsion part plus free rank.

    ``order`` is None when the cokernel is infinite.
    """
    invariant_factors: Vector
    free_rank: int

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0


def cokernel_structure(M: IntMatrix) -> CokernelStructure:
    """
    >>> cokernel_structure(IntMatrix.zeros(2, 3))
    CokernelStructure(invariant_factors=(), free_rank=2)
    >>> cokernel_structure(IntMatrix.from_rows([[2, 0], [0, 3]])).order
    6
    """
    snf = smith_normal_form(M)
    return CokernelStructure(tuple(d for d in snf.diagonal if d > 1),
                             M.rows - snf.rank)


def kernel_basis(M: IntMatrix) -> list:
    """
    >>> kernel_basis(IntMatrix.from_rows([[0, 1], [0, 1]]))
    [(1, 0)]
    >>> kernel_basis(IntMatrix.identity(2))
    []
    >>> kernel_basis(IntMatrix.zeros(2, 2))
    [(1, 0), (0, 1)]
    """
    snf = smith_normal_form(M)
    spanning = [snf.V.column(j) for j in range(snf.rank, M.cols)]
    return _echelon_basis(spanning, M.cols)


def unimodular_complete(w: Sequence[int]) -> IntMatrix:
    """A unimodular matrix whose first column is the primitive vector ``w``.

    >>> unimodular_complete((1, 0)) == IntMatrix.identity(2)
    True
    >>> unimodular_complete((1, 1))
    IntMatrix(rows=2, cols=2, entries=(1, 0, 1, 1))
    """
    v = [operator.index(x) for x in w]
    if not any(v):
        raise ZeroVector("cannot complete the zero vector")
    if reduce(math.gcd, v) != 1:
        raise NonPrimitiveVector(f"{tuple(v)} is not primitive")
    n = len(v)
    # row operations bring v to e1; their inverses, applied to columns, rebuild w
    inverse = IntMatrix.identity(n).to_rows()

    def swap(i, j):
        v[i], v[j] = v[j], v[i]
        for row in inverse:
            row[i], row[j] = row[j], row[i]

    while True:
        p = min((i for i in range(n) if v[i]), key=lambda i: abs(v[i]))
        if p:
            swap(0, p)
        if all(x == 0 for x in v[1:]):
            break
        for i in range(1, n):
            q = v[i] // v[0]
            if q:
                v[i] -= q * v[0]
                for row in inverse:
                    row[0] += q * row[i]
    if v[0] < 0:
        for row in inverse:
            row[0] = -row[0]
    return IntMatrix.from_rows(inverse, cols=n)


def exact_determinant(M: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant.

    >>> exact_determinant(IntMatrix.from_rows([[2, 4], [6, 8]]))
    -8
    """
    if not M.is_square:
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    if M.rows == 0:
        return 1
    return int(M.to_sympy().det(method="bareiss"))


def integer_inverse(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (adjugate times determinant).

    >>> integer_inverse(IntMatrix.from_rows([[1, 0], [1, 1]]))
    IntMatrix(rows=2, cols=2, entries=(1, 0, -1, 1))
    """
    det = exact_determinant(M)
    if abs(det) != 1:
        raise NotUnimodular(f"determinant {det} is not a unit")
    if M.rows <= 1:
        return M
    adjugate = M.to_sympy().adjugate()
    return IntMatrix(M.rows, M.cols, tuple(int(e) * det for e in adjugate))


def lattice_contains(B: IntMatrix, v: Sequence[int]) -> bool:
    """
    >>> lattice_contains(IntMatrix.from_rows([[0, 3]]), (6,))
    True
    >>> lattice_contains(IntMatrix.from_rows([[2, 4], [6, 8]]), (2, 6))
    True
    """
    if len(v) != B.rows:
        raise DimensionMismatch(f"vector of length {len(v)} for {B.rows} rows")
    return smith_normal_form(B).solve(v) is not None
