"""Dense exact matrices over K.

A :class:`KMatrix` keeps its entries as two numpy object arrays, ``re`` and
``om``, holding the 1- and w-coordinates (Python ints or Fractions).  Products
are assembled from four integer/rational matrix products, so the O_K-valued
matrices used for periods and Hecke operators never leave exact integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .quadfield import DomainError, Field, QuadElem, _normalize

Vector = tuple[QuadElem, ...]


def _obj(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def _reduce_array(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    flat = out.reshape(-1)
    for i, v in enumerate(flat):
        if isinstance(v, Fraction) and v.denominator == 1:
            flat[i] = v.numerator
    return out


class KMatrix:
    """A rows x cols matrix with entries in K."""

    __slots__ = ("field", "re", "om")

    def __init__(self, field: Field, re: np.ndarray, om: np.ndarray):
        if re.shape != om.shape or re.ndim != 2:
            raise ValueError("coordinate arrays must be 2-d and of equal shape")
        self.field = field
        self.re = re
        self.om = om

    # -- construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> KMatrix:
        return cls(field, _obj((rows, cols)), _obj((rows, cols)))

    @classmethod
    def identity(cls, field: Field, size: int) -> KMatrix:
        re = _obj((size, size))
        for i in range(size):
            re[i, i] = 1
        return cls(field, re, _obj((size, size)))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> KMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        out = cls.zeros(field, nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                out._set(i, j, v)
        return out

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], length: int | None = None) -> KMatrix:
        if not cols:
            return cls.zeros(field, length or 0, 0)
        return cls.from_rows(field, cols).T

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> KMatrix:
        out = cls.zeros(field, len(entries), len(entries))
        for i, v in enumerate(entries):
            out._set(i, i, v)
        return out

    @classmethod
    def vstack(cls, blocks: Sequence[KMatrix]) -> KMatrix:
        field = blocks[0].field
        return cls(field, np.vstack([b.re for b in blocks]), np.vstack([b.om for b in blocks]))

    def _set(self, i: int, j: int, v) -> None:
        if isinstance(v, QuadElem):
            if v.field != self.field:
                raise DomainError("entry from a different field")
            self.re[i, j] = v.x
            self.om[i, j] = v.y
        else:
            self.re[i, j] = _normalize(v)
            self.om[i, j] = 0

    def copy(self) -> KMatrix:
        return KMatrix(self.field, self.re.copy(), self.om.copy())

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.re.shape

    @property
    def rows(self) -> int:
        return self.re.shape[0]

    @property
    def cols(self) -> int:
        return self.re.shape[1]

    def __getitem__(self, ij: tuple[int, int]) -> QuadElem:
        i, j = ij
        return QuadElem(self.field, self.re[i, j], self.om[i, j])

    def row(self, i: int) -> Vector:
        return tuple(self[i, j] for j in range(self.cols))

    def column(self, j: int) -> Vector:
        return tuple(self[i, j] for i in range(self.rows))

    def to_rows(self) -> list[list[QuadElem]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.to_rows()]

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: KMatrix) -> None:
        if other.field != self.field:
            raise DomainError("matrices over different fields")

    def __add__(self, other: KMatrix) -> KMatrix:
        self._check(other)
        return KMatrix(self.field, self.re + other.re, self.om + other.om)

    def __sub__(self, other: KMatrix) -> KMatrix:
        self._check(other)
        return KMatrix(self.field, self.re - other.re, self.om - other.om)

    def __neg__(self) -> KMatrix:
        return KMatrix(self.field, -self.re, -self.om)

    def __matmul__(self, other: KMatrix) -> KMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        t, m = self.field.t, self.field.m
        if not self.om.any() and not other.om.any():
            return KMatrix(self.field, self.re.dot(other.re), _obj((self.rows, other.cols)))
        bb = self.om.dot(other.om)
        re = self.re.dot(other.re) - m * bb
        om = self.re.dot(other.om) + self.om.dot(other.re) + t * bb
        return KMatrix(self.field, re, om)

    def scale(self, c) -> KMatrix:
        if not isinstance(c, QuadElem):
            c = QuadElem(self.field, c, 0)
        t, m = self.field.t, self.field.m
        re = c.x * self.re - m * c.y * self.om
        om = c.x * self.om + c.y * self.re + t * c.y * self.om
        return KMatrix(self.field, re, om)

    def __mul__(self, c) -> KMatrix:
        if isinstance(c, KMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def conj(self) -> KMatrix:
        return KMatrix(self.field, self.re + self.field.t * self.om, -self.om)

    @property
    def T(self) -> KMatrix:
        return KMatrix(self.field, self.re.T.copy(), self.om.T.copy())

    def kron(self, other: KMatrix) -> KMatrix:
        """Kronecker product; entry [(p,q),(i,j)] = self[p,i] * other[q,j]."""
        self._check(other)
        t, m = self.field.t, self.field.m
        bb = np.kron(self.om, other.om)
        re = np.kron(self.re, other.re) - m * bb
        om = np.kron(self.re, other.om) + np.kron(self.om, other.re) + t * bb
        return KMatrix(self.field, re, om)

    def apply(self, v: Sequence) -> Vector:
        col = KMatrix.from_columns(self.field, [list(v)])
        return (self @ col).column(0)

    def trace(self) -> QuadElem:
        return QuadElem(self.field, sum(np.diagonal(self.re), 0), sum(np.diagonal(self.om), 0))

    # -- predicates ---------------------------------------------------------
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.re.flat) and all(
            v.denominator == 1 for v in self.om.flat
        )

    def is_zero(self) -> bool:
        return not self.re.any() and not self.om.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, KMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.re == other.re))
            and bool(np.all(self.om == other.om))
        )

    __hash__ = None

    def normalized(self) -> KMatrix:
        return KMatrix(self.field, _reduce_array(self.re), _reduce_array(self.om))

    def __repr__(self) -> str:
        return f"KMatrix(D={self.field.d}, {self.to_strings()})"

    # -- elimination --------------------------------------------------------
    def rref(self) -> tuple[KMatrix, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (first nonzero pivoting)."""
        re = self.re.copy()
        om = self.om.copy()
        rows, cols = re.shape
        t, m = self.field.t, self.field.m
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = next((i for i in range(r, rows) if re[i, c] != 0 or om[i, c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                re[[r, piv]] = re[[piv, r]]
                om[[r, piv]] = om[[piv, r]]
            inv = QuadElem(self.field, re[r, c], om[r, c]).inverse()
            fx, fy = inv.x, inv.y
            re[r], om[r] = fx * re[r] - m * fy * om[r], fx * om[r] + fy * re[r] + t * fy * om[r]
            for i in range(rows):
                if i == r:
                    continue
                gx, gy = re[i, c], om[i, c]
                if gx == 0 and gy == 0:
                    continue
                re[i] = re[i] - (gx * re[r] - m * gy * om[r])
                om[i] = om[i] - (gx * om[r] + gy * re[r] + t * gy * om[r])
            pivots.append(c)
            r += 1
        reduced = KMatrix(self.field, _reduce_array(re), _reduce_array(om))
        return reduced, tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> QuadElem:
        """Determinant by exact elimination."""
        if self.rows != self.cols:
            raise DomainError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        det = QuadElem(self.field, 1, 0)
        for c in range(n):
            piv = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if piv is None:
                return QuadElem(self.field, 0, 0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c]
            inv = a[c][c].inverse()
            for i in range(c + 1, n):
                f = a[i][c] * inv
                if f.is_zero():
                    continue
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det


# -- subspaces ------------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """A K-subspace of K^n given by an echelon basis.

    ``quotient`` optionally holds representatives of a basis of the quotient by
    the coboundary line; ``quotient_coordinates`` holds, for results derived
    from W, the coordinates of each basis vector in that quotient basis.
    """

    ambient_dim: int
    vectors: tuple[Vector, ...]
    contains_coboundary: bool | None = None
    quotient: tuple[Vector, ...] | None = None
    quotient_coordinates: tuple[Vector, ...] | None = dc_field(default=None)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def quotient_dim(self) -> int | None:
        return None if self.quotient is None else len(self.quotient)

    def matrix(self, field: Field) -> KMatrix:
        """Basis vectors as the columns of an ambient_dim x dim matrix."""
        return KMatrix.from_columns(field, [list(v) for v in self.vectors], self.ambient_dim)

    def contains(self, v: Sequence[QuadElem], field: Field) -> bool:
        if not self.vectors:
            return all(x == 0 for x in v)
        base = KMatrix.from_rows(field, [list(w) for w in self.vectors])
        ext = KMatrix.from_rows(field, [list(w) for w in self.vectors] + [list(v)])
        return base.rank() == ext.rank()


def kernel(mat: KMatrix) -> SubspaceBasis:
    """Right kernel with one basis vector per free column (reduced echelon form)."""
    reduced, pivots = mat.rref()
    cols = mat.cols
    free = [c for c in range(cols) if c not in pivots]
    field = mat.field
    vectors = []
    for f in free:
        v = [QuadElem(field, 0, 0)] * cols
        v[f] = QuadElem(field, 1, 0)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r, f]
        vectors.append(tuple(v))
    return SubspaceBasis(cols, tuple(vectors))


def row_space_rref(field: Field, vectors: Iterable[Sequence[QuadElem]]) -> KMatrix:
    """Canonical form of span(vectors): the nonzero rows of the rref."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return KMatrix.zeros(field, 0, 0)
    reduced, pivots = KMatrix.from_rows(field, vectors).rref()
    return KMatrix(field, reduced.re[: len(pivots)].copy(), reduced.om[: len(pivots)].copy())


def solve_coordinates(field: Field, basis: Sequence[Vector], v: Sequence[QuadElem]) -> Vector:
    """Coordinates of v in an independent list of vectors; raises if v is outside their span."""
    n = len(basis)
    aug = KMatrix.from_columns(field, [list(b) for b in basis] + [list(v)])
    reduced, pivots = aug.rref()
    if n in pivots:
        raise DomainError("vector is not in the span of the basis")
    if len(pivots) != n:
        raise DomainError("basis vectors are linearly dependent")
    return tuple(reduced[i, n] for i in range(n))


# -- characteristic polynomial ------------------------------------------------


def charpoly(mat: KMatrix) -> list[QuadElem]:
    """Coefficients of det(xI - A), leading coefficient first.

    Faddeev-LeVerrier recursion; the only divisions are by the integers 1..n.
    """
    if mat.rows != mat.cols:
        raise DomainError("characteristic polynomial of a non-square matrix")
    n = mat.rows
    field = mat.field
    coeffs = [QuadElem(field, 1, 0)]
    ident = KMatrix.identity(field, n)
    aux = KMatrix.zeros(field, n, n)
    for k in range(1, n + 1):
        aux = mat @ aux + ident.scale(coeffs[-1])
        c = -(mat @ aux).trace() / k
        coeffs.append(c)
    return coeffs


def poly_at_matrix(coeffs: Sequence[QuadElem], mat: KMatrix) -> KMatrix:
    """Horner evaluation of a polynomial (leading coefficient first) at a square matrix."""
    n = mat.rows
    ident = KMatrix.identity(mat.field, n)
    acc = KMatrix.zeros(mat.field, n, n)
    for c in coeffs:
        acc = acc @ mat + ident.scale(c)
    return acc


def poly_at(coeffs: Sequence[QuadElem], x: QuadElem) -> QuadElem:
    acc = QuadElem(x.field, 0, 0)
    for c in coeffs:
        acc = acc * x + c
    return acc
