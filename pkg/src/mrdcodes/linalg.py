"""Exact dense linear algebra over one tower level.

Matrices hold raw element indices internally (see :mod:`mrdcodes.gf`);
indexing returns :class:`~mrdcodes.gf.FieldElement` values.  Everything is
Gauss-Jordan elimination with exact inverses; instances in this package
are at most a few dozen rows.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, DivisionByZero, LevelMismatch, NotSquare
from .gf import FieldElement, FiniteField


class Matrix:
    """Immutable dense matrix over a finite field."""

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field: FiniteField, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the width of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def from_elements(cls, rows: Iterable[Sequence[FieldElement]], field: FiniteField | None = None,
                      ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if field is None:
            field = rows[0][0].field
        out = []
        for r in rows:
            vals = []
            for x in r:
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise LevelMismatch(f"entry of {x.field!r} in a matrix over {field!r}")
                    vals.append(x.value)
                else:
                    vals.append(field(x).value)
            out.append(vals)
        return cls(field, out, ncols)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: FiniteField, r: int, c: int) -> "Matrix":
        return cls(field, [[0] * c for _ in range(r)], c)

    # basic protocol --------------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.rows[i][j])

    def row(self, i: int) -> list[FieldElement]:
        return [FieldElement(self.field, v) for v in self.rows[i]]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.key, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(self.field.to_json(v)) for v in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def to_json(self) -> list:
        return [[self.field.to_json(v) for v in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: FiniteField, obj, ncols: int | None = None) -> "Matrix":
        return cls(field, [[field.parse(x) for x in r] for r in obj], ncols)

    # arithmetic ------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.field, [[] for _ in range(self.ncols)], 0)
        return Matrix(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise LevelMismatch("matrices over different fields")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        K = self.field
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = K.add(acc, K.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(K, out, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        K = self.field
        return Matrix(K, [[K.add(a, b) for a, b in zip(r, s)]
                          for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c: int) -> "Matrix":
        K = self.field
        return Matrix(K, [[K.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def map(self, field: FiniteField, fn: Callable[[int], int]) -> "Matrix":
        return Matrix(field, [[fn(a) for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self == self.T

    # elimination -----------------------------------------------------------
    def rref(self) -> tuple["Matrix", int, list[int]]:
        """Reduced row echelon form, rank and pivot columns."""
        K = self.field
        A = [list(r) for r in self.rows]
        nr, nc = len(A), self.ncols
        pivots: list[int] = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            piv = next((i for i in range(r, nr) if A[i][c]), None)
            if piv is None:
                continue
            A[r], A[piv] = A[piv], A[r]
            inv = K.inv(A[r][c])
            A[r] = [K.mul(inv, x) for x in A[r]]
            for i in range(nr):
                if i != r and A[i][c]:
                    f = A[i][c]
                    A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
        return Matrix(K, A, nc), len(pivots), pivots

    def rank(self) -> int:
        return self.rref()[1]

    def row_space(self) -> "Matrix":
        """Canonical generator of the row space: the nonzero RREF rows."""
        R, rank, _ = self.rref()
        return Matrix(self.field, R.rows[:rank], self.ncols)

    def kernel(self) -> "Matrix":
        """Basis of {v : A v = 0}, one vector per row (possibly zero rows)."""
        K = self.field
        R, rank, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * self.ncols
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = K.neg(R.rows[i][f])
            basis.append(v)
        return Matrix(K, basis, self.ncols)

    def det(self) -> FieldElement:
        if self.nrows != self.ncols:
            raise NotSquare(f"determinant of a {self.shape} matrix")
        K = self.field
        A = [list(r) for r in self.rows]
        n = len(A)
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if A[i][c]), None)
            if piv is None:
                return FieldElement(K, 0)
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                d = K.neg(d)
            d = K.mul(d, A[c][c])
            inv = K.inv(A[c][c])
            for i in range(c + 1, n):
                if A[i][c]:
                    f = K.mul(A[i][c], inv)
                    A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[c])]
        return FieldElement(K, d)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise NotSquare(f"inverse of a {self.shape} matrix")
        n = self.nrows
        K = self.field
        aug = Matrix(K, [list(r) + [1 if i == j else 0 for j in range(n)]
                         for i, r in enumerate(self.rows)], 2 * n)
        R, _, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise DivisionByZero("matrix is singular")
        return Matrix(K, [r[n:] for r in R.rows], n)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """One solution x of A x = b (free variables zero), or None."""
        K = self.field
        if len(b) != self.nrows:
            raise DimensionMismatch("right-hand side length mismatch")
        aug = Matrix(K, [list(r) + [bi] for r, bi in zip(self.rows, b)], self.ncols + 1)
        R, _, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [0] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = R.rows[i][-1]
        return x


def rref_rank(A: Matrix) -> tuple[Matrix, int, list[int]]:
    return A.rref()


def kernel(A: Matrix) -> Matrix:
    return A.kernel()


def det(A: Matrix) -> FieldElement:
    return A.det()


def same_row_space(A: Matrix, B: Matrix) -> bool:
    return A.field == B.field and A.ncols == B.ncols and A.row_space() == B.row_space()


def gram(vectors: Sequence, pairing: Callable, field: FiniteField | None = None) -> Matrix:
    """Matrix of ``pairing(v_i, v_j)``; the pairing returns FieldElements."""
    vectors = list(vectors)
    if vectors and isinstance(vectors[0], (list, tuple)):
        lengths = {len(v) for v in vectors}
        if len(lengths) > 1:
            raise DimensionMismatch("vectors of different lengths")
    entries = [[pairing(u, v) for v in vectors] for u in vectors]
    if field is None:
        field = entries[0][0].field
    return Matrix.from_elements(entries, field, len(vectors))


# ---------------------------------------------------------------------------
# Batched rank over F_p (numpy), used by the exhaustive codeword scans.
# ---------------------------------------------------------------------------

def batch_rank_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a stack of matrices, shape (B, r, c) -> (B,)."""
    A = np.array(A, dtype=np.int64) % p
    B, r, c = A.shape
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    used = np.zeros((B, r), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for col in range(c):
        colv = A[:, :, col]
        cand = (colv != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = A[ar, piv]
        f = colv * inv[prow[:, col]][:, None] % p
        f[ar, piv] = 0
        f[~has] = 0
        A = (A - f[:, :, None] * prow[:, None, :]) % p
        used[ar[has], piv[has]] = True
        rank += has
    return rank
