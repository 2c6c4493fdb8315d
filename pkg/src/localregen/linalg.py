"""Dense matrices over a FiniteField.

Entries are stored as a read-only int64 numpy array of canonical field
values; all mutating algorithms work on private copies, so Matrix behaves
as a value type.  Rank / reduction / determinant run through the kernels
module (numba or numpy backend); fields too large for the kernel tables use
a generic pure-Python elimination.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import (
    DuplicatePoints,
    FieldMismatch,
    NoSolution,
    ShapeMismatch,
    SingularMatrix,
)
from .field import FieldElement, FiniteField


class Matrix:
    __slots__ = ("field", "_a")

    def __init__(self, field: FiniteField, data, _trusted=False):
        self.field = field
        if _trusted:
            a = data
        else:
            a = np.array(data, dtype=np.int64)
            if a.ndim == 1:
                a = a.reshape(1, -1)
            if a.ndim != 2:
                raise ShapeMismatch(f"matrix data must be 2-D, got shape {a.shape}")
            if field.m == 1:
                a %= field.p
            elif a.size and (a.min() < 0 or a.max() >= field.q):
                raise ValueError(f"entries outside canonical range [0, {field.q})")
        a.setflags(write=False)
        self._a = a

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64), _trusted=True)

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64), _trusted=True)

    @classmethod
    def random(cls, field, rows, cols, rng):
        return cls(field, rng.integers(0, field.q, size=(rows, cols), dtype=np.int64), _trusted=True)

    # -- basic views -------------------------------------------------------

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def data(self):
        """Read-only int64 array of canonical values."""
        return self._a

    def copy_array(self):
        return self._a.copy()

    def entry(self, i, j) -> FieldElement:
        return FieldElement(self.field, int(self._a[i, j]))

    def __getitem__(self, idx):
        out = self._a[idx]
        if np.isscalar(out) or out.ndim == 0:
            return FieldElement(self.field, int(out))
        if out.ndim == 1:
            out = out.reshape(1, -1)
        return Matrix(self.field, out.copy(), _trusted=True)

    def row(self, i):
        return self._a[i].copy()

    def take_columns(self, idx):
        return Matrix(self.field, self._a[:, list(idx)].copy(), _trusted=True)

    def take_rows(self, idx):
        return Matrix(self.field, self._a[list(idx), :].copy(), _trusted=True)

    def transpose(self):
        return Matrix(self.field, np.ascontiguousarray(self._a.T), _trusted=True)

    @property
    def T(self):
        return self.transpose()

    # -- arithmetic ---------------------------------------------------------

    def _check_same_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.field.add_vec(self._a, other._a), _trusted=True)

    def __sub__(self, other):
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.field.sub_vec(self._a, other._a), _trusted=True)

    def __neg__(self):
        return Matrix(self.field, self.field.sub_vec(np.int64(0), self._a), _trusted=True)

    def scale(self, c):
        c = self.field.canon(c)
        return Matrix(self.field, self.field.mul_vec(self._a, np.int64(c)), _trusted=True)

    def __matmul__(self, other):
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        if _use_kernels(self.field):
            out = kernels.matmul(
                np.ascontiguousarray(self._a),
                np.ascontiguousarray(other._a),
                *self.field.kernel_args(),
            )
        else:
            out = _py_matmul(self.field, self._a, other._a)
        return Matrix(self.field, out, _trusted=True)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self._a.tobytes()))

    # -- elimination-based operations ---------------------------------------

    def _eliminated(self, reduced):
        a = np.ascontiguousarray(self._a.copy())
        if _use_kernels(self.field):
            r = kernels.eliminate(a, *self.field.kernel_args(), reduced)
        else:
            r = _py_eliminate(self.field, a, reduced)
        return int(r), a

    def rank(self) -> int:
        return self._eliminated(False)[0]

    def rref(self):
        """(rank, reduced matrix) with zero rows trimmed off."""
        r, a = self._eliminated(True)
        return r, Matrix(self.field, a[:r], _trusted=True)

    def row_basis(self):
        """Matrix whose rows are a basis of this matrix's row space."""
        return self.rref()[1]

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ShapeMismatch(f"determinant needs a square matrix, got {self.shape}")
        a = np.ascontiguousarray(self._a.copy())
        if _use_kernels(self.field):
            d = kernels.det_in_place(a, *self.field.kernel_args())
        else:
            d = _py_det(self.field, a)
        return FieldElement(self.field, int(d))

    def inv(self):
        if self.rows != self.cols:
            raise ShapeMismatch(f"inverse needs a square matrix, got {self.shape}")
        n = self.rows
        aug = np.hstack([self._a, np.eye(n, dtype=np.int64)])
        aug = np.ascontiguousarray(aug)
        if _use_kernels(self.field):
            r = kernels.eliminate(aug, *self.field.kernel_args(), True)
        else:
            r = _py_eliminate(self.field, aug, True)
        # a pivot escaping into the augmented block means the left block is singular
        if _pivot_columns(aug, r) != list(range(n)):
            raise SingularMatrix(f"matrix of rank < {n}")
        return Matrix(self.field, aug[:, n:].copy(), _trusted=True)

    def solve(self, rhs: "Matrix") -> "Matrix":
        """One solution X of self @ X = rhs (free variables set to zero)."""
        self._check_same_field(rhs)
        if rhs.rows != self.rows:
            raise ShapeMismatch(f"solve: {self.shape} vs rhs {rhs.shape}")
        n = self.cols
        aug = np.ascontiguousarray(np.hstack([self._a, rhs._a]))
        if _use_kernels(self.field):
            r = kernels.eliminate(aug, *self.field.kernel_args(), True)
        else:
            r = _py_eliminate(self.field, aug, True)
        pivots = _pivot_columns(aug, r)
        if any(pv >= n for pv in pivots):
            raise NoSolution("inconsistent linear system")
        x = np.zeros((n, rhs.cols), dtype=np.int64)
        for row_i, pv in enumerate(pivots):
            x[pv] = aug[row_i, n:]
        return Matrix(self.field, x, _trusted=True)

    def null_space(self) -> "Matrix":
        """Matrix whose rows h satisfy  self @ h^T = 0  (a dual basis).

        Returns a 0 x cols matrix when the kernel is trivial.
        """
        r, red = self.rref()
        a = red._a
        n = self.cols
        pivots = _pivot_columns(a, r)
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for bi, fc in enumerate(free):
            basis[bi, fc] = 1
            for row_i, pv in enumerate(pivots):
                basis[bi, pv] = self.field.neg(int(a[row_i, fc]))
        return Matrix(self.field, basis, _trusted=True)

    def row_space_contains(self, other: "Matrix") -> bool:
        self._check_same_field(other)
        if other.cols != self.cols:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return vstack(self, other).rank() == self.rank()

    def __repr__(self):
        return f"Matrix({self.field}, shape={self.shape})"


def _use_kernels(field):
    if field.m == 1:
        return True
    return field._exp.size > 0


def _pivot_columns(a, rank):
    pivots = []
    c = 0
    for i in range(rank):
        while c < a.shape[1] and a[i, c] == 0:
            c += 1
        pivots.append(c)
        c += 1
    return pivots


def hstack(*mats: Matrix) -> Matrix:
    field = mats[0].field
    for mt in mats[1:]:
        if mt.field != field:
            raise FieldMismatch("hstack across different fields")
    return Matrix(field, np.hstack([mt._a for mt in mats]), _trusted=True)


def vstack(*mats: Matrix) -> Matrix:
    field = mats[0].field
    for mt in mats[1:]:
        if mt.field != field:
            raise FieldMismatch("vstack across different fields")
    return Matrix(field, np.vstack([mt._a for mt in mats]), _trusted=True)


def block_diag(field: FiniteField, blocks) -> Matrix:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        if b.field != field:
            raise FieldMismatch("block_diag across different fields")
        out[r : r + b.rows, c : c + b.cols] = b._a
        r += b.rows
        c += b.cols
    return Matrix(field, out, _trusted=True)


def vandermonde(field: FiniteField, rows: int, points) -> Matrix:
    """rows x len(points) matrix with entry (i, j) = points[j]**i."""
    pts = [field.canon(x) for x in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints(f"evaluation points must be distinct, got {pts}")
    out = np.zeros((rows, len(pts)), dtype=np.int64)
    out[0, :] = 1
    for i in range(1, rows):
        out[i, :] = [field.mul(int(out[i - 1, j]), pt) for j, pt in enumerate(pts)]
    return Matrix(field, out, _trusted=True)


def rs_generator(field: FiniteField, k: int, n: int, points=None) -> Matrix:
    """Generator of an [n, k] Reed-Solomon code (Vandermonde on n points)."""
    from .errors import FieldTooSmall

    if points is None:
        if field.q < n:
            raise FieldTooSmall(f"[{n},{k}] RS needs q >= {n}, field has q = {field.q}")
        points = range(n)
    return vandermonde(field, k, points)


def systematic_form(g: Matrix) -> Matrix:
    """Row-reduce a full-row-rank generator to [I | Q] (no column permutes).

    Requires the leading rows x rows block to be invertible, which holds for
    the Vandermonde generators used throughout.
    """
    r, red = g.rref()
    if r != g.rows:
        raise SingularMatrix(f"generator has rank {r} < {g.rows} rows")
    lead = red.take_columns(range(g.rows))
    if not np.array_equal(lead._a, np.eye(g.rows, dtype=np.int64)):
        raise SingularMatrix("leading block is singular; cannot systematize in place")
    return red


# -- generic slow path for fields without kernel tables ----------------------

def _py_eliminate(field, a, reduced):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(int(a[r, c]))
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = field.mul(int(a[r, j]), inv)
        lo = 0 if reduced else r + 1
        for i in range(lo, rows):
            if i == r or not a[i, c]:
                continue
            f = int(a[i, c])
            for j in range(c, cols):
                if a[r, j]:
                    a[i, j] = field.sub(int(a[i, j]), field.mul(f, int(a[r, j])))
        r += 1
        if r == rows:
            break
    return r


def _py_det(field, a):
    n = a.shape[0]
    det = 1
    swaps = 0
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if a[i, c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            swaps += 1
        pv = int(a[c, c])
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for i in range(c + 1, n):
            if a[i, c]:
                f = field.mul(int(a[i, c]), inv)
                for j in range(c, n):
                    if a[c, j]:
                        a[i, j] = field.sub(int(a[i, j]), field.mul(f, int(a[c, j])))
    return field.neg(det) if swaps & 1 else det


def _py_matmul(field, a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[0]):
        for k in range(a.shape[1]):
            v = int(a[i, k])
            if not v:
                continue
            for j in range(b.shape[1]):
                w = int(b[k, j])
                if w:
                    out[i, j] = field.add(int(out[i, j]), field.mul(v, w))
    return out
