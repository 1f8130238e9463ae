"""Exact linear algebra over prime fields F_p and the rationals.

Matrices wrap a numpy array.  Over F_p the array holds int64 residues in
[0, p) (object ints when p is too large for int64 products); over Q it holds
Python ints and Fractions in an object array.  Elimination is done on plain
lists with deterministic pivoting: leftmost nonzero column, topmost row.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np


class FieldMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class Field:
    """F_p for a prime p, or Q when p == 0."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def dtype(self):
        # int64 is safe while k * (p-1)^2 fits for the sizes used here
        if self.p and self.p < (1 << 24):
            return np.int64
        return object

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def scalar(self, v):
        """Coerce an int, Fraction or "a/b" string into this field."""
        if isinstance(v, str):
            v = Fraction(v)
        if self.p:
            if isinstance(v, Fraction):
                if v.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{v} has no image in F{self.p}")
                return v.numerator * pow(v.denominator, -1, self.p) % self.p
            return int(v) % self.p
        if isinstance(v, Fraction):
            return v.numerator if v.denominator == 1 else v
        return int(v)

    def inv(self, v):
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(v), -1, self.p)
        return Fraction(1) / v

    def normalize(self, v):
        """Canonical Python value of an entry (int, or Fraction over Q)."""
        if self.p:
            return int(v) % self.p
        v = Fraction(v)
        return v.numerator if v.denominator == 1 else v


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


class Matrix:
    """Immutable matrix over a Field."""

    __slots__ = ("field", "rows", "cols", "a")

    def __init__(self, field: Field, rows: int, cols: int, a=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if a is None:
            a = np.zeros((rows, cols), dtype=field.dtype)
        elif a.shape != (rows, cols):
            raise ShapeMismatch(f"array shape {a.shape} != {(rows, cols)}")
        a.flags.writeable = False
        self.a = a

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else (cols or 0)
        if any(len(row) != c for row in rows):
            raise ShapeMismatch("ragged rows")
        a = np.empty((r, c), dtype=field.dtype)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                a[i, j] = field.scalar(v)
        return cls(field, r, c, a)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        a = np.zeros((n, n), dtype=field.dtype)
        for i in range(n):
            a[i, i] = 1
        return cls(field, n, n, a)

    def _new(self, a) -> "Matrix":
        if self.field.p:
            a = a % self.field.p
        return Matrix(self.field, a.shape[0], a.shape[1], a)

    # arithmetic --------------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return self._new(self.a @ other.a)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return self._new(self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return self._new(self.a - other.a)

    def __neg__(self) -> "Matrix":
        return self._new(-self.a)

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        if self.field.dtype is not object:
            return self._new(self.a * int(c))
        return self._new(self.a * c)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, self.a.T.copy())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.a.any() if self.a.size else True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and (self.a.size == 0 or bool(np.all(self.a == other.a)))
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

    # views -------------------------------------------------------------
    def entries(self) -> list:
        """Row-major list of normalized entries."""
        return [self.field.normalize(v) for v in self.a.reshape(-1)]

    def tolist(self) -> list:
        return [[self.field.normalize(v) for v in row] for row in self.a]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.field, r1 - r0, c1 - c0, self.a[r0:r1, c0:c1].copy())

    def column(self, j: int) -> "Matrix":
        return self.submatrix(0, self.rows, j, j + 1)


def hstack(field: Field, rows: int, mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    cols = sum(m.cols for m in mats)
    if not mats or cols == 0:
        return Matrix.zeros(field, rows, cols)
    for m in mats:
        if m.rows != rows:
            raise ShapeMismatch("hstack row mismatch")
    return Matrix(field, rows, cols, np.hstack([m.a for m in mats]))


def vstack(field: Field, cols: int, mats: Iterable[Matrix]) -> Matrix:
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    if not mats or rows == 0:
        return Matrix.zeros(field, rows, cols)
    for m in mats:
        if m.cols != cols:
            raise ShapeMismatch("vstack column mismatch")
    return Matrix(field, rows, cols, np.vstack([m.a for m in mats]))


def block(field: Field, row_sizes: Sequence[int], col_sizes: Sequence[int], entries: dict) -> Matrix:
    """Block matrix from {(i, j): Matrix | scalar}; missing blocks are zero.

    A scalar c in a block stands for c times the identity (block must be square).
    """
    R, C = sum(row_sizes), sum(col_sizes)
    a = np.zeros((R, C), dtype=field.dtype)
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    for (i, j), m in entries.items():
        r, c = row_sizes[i], col_sizes[j]
        if r == 0 or c == 0:
            continue
        if isinstance(m, Matrix):
            if m.field != field:
                raise FieldMismatch("block field mismatch")
            if m.shape != (r, c):
                raise ShapeMismatch(f"block {(i, j)} has shape {m.shape}, expected {(r, c)}")
            a[roff[i]:roff[i + 1], coff[j]:coff[j + 1]] = m.a
        else:
            if r != c:
                raise ShapeMismatch(f"scalar block {(i, j)} must be square")
            v = field.scalar(m)
            for k in range(r):
                a[roff[i] + k, coff[j] + k] = v
    if field.p:
        a %= field.p
    return Matrix(field, R, C, a)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    return block(field, [m.rows for m in mats], [m.cols for m in mats], {(i, i): m for i, m in enumerate(mats)})


# elimination ---------------------------------------------------------------

def _rref(field: Field, rows: list, ncols: int):
    """In-place reduced row echelon form of a list of row lists.

    Returns the pivot column list.  Pivot search: leftmost column holding a
    nonzero entry at or below the current row, topmost such row.
    """
    p = field.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            rows[r] = [v * inv % p for v in rows[r]]
        else:
            rows[r] = [v * inv for v in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    row = rows[i]
                    if p:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
                    else:
                        rows[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def _as_rows(m: Matrix) -> list:
    if m.field.p:
        return [[int(v) for v in row] for row in m.a]
    return [[v if isinstance(v, (int, Fraction)) else Fraction(v) for v in row] for row in m.a]


def rref(m: Matrix):
    rows = _as_rows(m)
    piv = _rref(m.field, rows, m.cols)
    return Matrix.from_rows(m.field, rows, m.cols) if rows else Matrix.zeros(m.field, 0, m.cols), piv


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.field, _as_rows(m), m.cols))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ker m, one per free column of the rref."""
    F = m.field
    n = m.cols
    rows = _as_rows(m)
    piv = _rref(F, rows, n)
    free = [c for c in range(n) if c not in set(piv)]
    a = np.zeros((n, len(free)), dtype=F.dtype)
    for k, c in enumerate(free):
        a[c, k] = 1
        for i, pc in enumerate(piv):
            a[pc, k] = F.scalar(-rows[i][c])
    return Matrix(F, n, len(free), a)


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with m x = b (free variables set to 0), or None."""
    if m.field != b.field:
        raise FieldMismatch(f"{m.field} vs {b.field}")
    if m.rows != b.rows:
        raise ShapeMismatch(f"solve: {m.shape} vs {b.shape}")
    F = m.field
    n, k = m.cols, b.cols
    if m.rows == 0:
        return Matrix.zeros(F, n, k)
    aug = [ra + rb for ra, rb in zip(_as_rows(m), _as_rows(b))]
    piv = _rref(F, aug, n)
    for i in range(len(piv), len(aug)):
        if any(v != 0 for v in aug[i][n:]):
            return None
    x = np.zeros((n, k), dtype=F.dtype)
    for i, pc in enumerate(piv):
        for j in range(k):
            x[pc, j] = F.scalar(aug[i][n + j])
    return Matrix(F, n, k, x)


def column_space(m: Matrix) -> Matrix:
    """Basis of the column span: the pivot columns of m."""
    if m.cols == 0 or m.rows == 0:
        return Matrix.zeros(m.field, m.rows, 0)
    piv = _rref(m.field, _as_rows(m), m.cols)
    return hstack(m.field, m.rows, [m.column(c) for c in piv])


def complement(sub: Matrix, ambient_dim: int) -> Matrix:
    """Standard basis vectors completing the columns of sub to a basis.

    e_1, e_2, ... are added in order whenever independent of what is already
    spanned.
    """
    F = sub.field
    if sub.rows != ambient_dim:
        raise ShapeMismatch(f"sub has {sub.rows} rows, ambient dimension {ambient_dim}")
    if rank(sub) != sub.cols:
        raise ValueError("complement: columns of sub are dependent")
    # row-reduce the transpose incrementally
    basis_rows = _as_rows(sub.T)
    _rref(F, basis_rows, ambient_dim)
    chosen = []
    r = sub.cols
    for i in range(ambient_dim):
        e = [0] * ambient_dim
        e[i] = 1
        trial = basis_rows + [e]
        if len(_rref(F, trial, ambient_dim)) > r:
            chosen.append(i)
            basis_rows = trial
            r += 1
        if r == ambient_dim:
            break
    a = np.zeros((ambient_dim, len(chosen)), dtype=F.dtype)
    for k, i in enumerate(chosen):
        a[i, k] = 1
    return Matrix(F, ambient_dim, len(chosen), a)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeMismatch("inverse of non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return x


def preimage(a: Matrix, basis: Matrix, target: Matrix) -> Matrix:
    """Basis of {v in span(basis) : a v in span(target)}, in ambient coordinates."""
    F = a.field
    img = a @ basis
    stacked = hstack(F, a.rows, [img, -target])
    ker = kernel_basis(stacked)
    coeffs = ker.submatrix(0, basis.cols, 0, ker.cols)
    return column_space(basis @ coeffs)


def same_span(u: Matrix, v: Matrix) -> bool:
    """Equal column spans (same ambient dimension assumed)."""
    ru, rv = rank(u), rank(v)
    if ru != rv:
        return False
    both = hstack(u.field, u.rows, [u, v])
    return rank(both) == ru


def vec(m: Matrix) -> Matrix:
    """Column-major vectorization as a column matrix."""
    return Matrix(m.field, m.rows * m.cols, 1, m.a.reshape(-1, order="F").reshape(-1, 1).copy())


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    return Matrix(v.field, rows, cols, v.a.reshape(-1).reshape((rows, cols), order="F").copy())


def kron(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    return a._new(np.kron(a.a, b.a))


def solve_sylvester_system(field: Field, unknowns: dict, equations: list) -> Optional[dict]:
    """Solve a linear system in matrix unknowns.

    unknowns maps a key to the shape (rows, cols) of X_key.  Each equation is
    (terms, rhs) with terms a list of (key, A, B) standing for A X_key B.
    Returns {key: X} or None.  Uses vec(A X B) = (B^T ⊗ A) vec(X).
    """
    keys = [k for k in unknowns if unknowns[k][0] * unknowns[k][1]]
    offset, n = {}, 0
    for k in keys:
        offset[k] = n
        n += unknowns[k][0] * unknowns[k][1]
    blocks, rhs = [], []
    for terms, b in equations:
        m = b.rows * b.cols
        if m == 0:
            continue
        row = np.zeros((m, n), dtype=field.dtype)
        for k, A, B in terms:
            if k not in offset:
                continue
            r, c = unknowns[k]
            row[:, offset[k]:offset[k] + r * c] += kron(B.T, A).a
        blocks.append(row)
        rhs.append(vec(b).a)
    sol = {}
    if blocks:
        M = Matrix(field, sum(b.shape[0] for b in blocks), n, np.vstack(blocks)).scale(1)
        R = Matrix(field, M.rows, 1, np.vstack(rhs))
        x = solve(M, R)
        if x is None:
            return None
    else:
        x = Matrix.zeros(field, n, 1)
    for k, (r, c) in unknowns.items():
        if k in offset:
            sol[k] = unvec(x.submatrix(offset[k], offset[k] + r * c, 0, 1), r, c)
        else:
            sol[k] = Matrix.zeros(field, r, c)
    return sol
