"""Dense exact linear algebra over the fields in :mod:`petrilab.fields`.

Finite fields use plain Gauss-Jordan.  Over Q each row is scaled to integers
and reduced with fraction-free Gauss-Jordan (every division by the previous
pivot is exact), so intermediate values never leave Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Any, Sequence

from .errors import DimensionMismatch
from .fields import Field, FieldElement, PrimeField, RationalField


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple  # tuple of row tuples of raw field values

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatch(f"entries do not form a {self.nrows}x{self.ncols} matrix")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field.convert(v) for v in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_raw(cls, field: Field, rows: Sequence[Sequence[Any]], ncols: int | None = None) -> "Matrix":
        """Like :meth:`from_rows` but trusts the values to be canonical already."""
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.from_raw(
            field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n
        )

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def transpose(self) -> "Matrix":
        cols = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix(self.field, self.ncols, self.nrows, cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        K = self.field
        out = []
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        for r in self.rows:
            row = []
            for c in cols:
                acc = K.zero
                for a, b in zip(r, c):
                    acc = K.add(acc, K.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(K, self.nrows, other.ncols, tuple(out))

    def apply(self, vec: Sequence[Any]) -> tuple:
        K = self.field
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        for r in self.rows:
            acc = K.zero
            for a, b in zip(r, vec):
                acc = K.add(acc, K.mul(a, b))
            out.append(acc)
        return tuple(out)


def _rref_prime(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    pivots: list[int] = []
    i = 0
    n = len(rows)
    for j in range(ncols):
        if i == n:
            break
        k = next((k for k in range(i, n) if rows[k][j] % p), None)
        if k is None:
            continue
        rows[i], rows[k] = rows[k], rows[i]
        inv = pow(rows[i][j], -1, p)
        pivot_row = [v * inv % p for v in rows[i]]
        rows[i] = pivot_row
        for l in range(n):
            if l != i:
                c = rows[l][j]
                if c:
                    rows[l] = [(a - c * b) % p for a, b in zip(rows[l], pivot_row)]
        pivots.append(j)
        i += 1
    return rows[: len(pivots)], pivots


def _rref_generic(K: Field, rows: list[list[Any]], ncols: int) -> tuple[list[list[Any]], list[int]]:
    pivots: list[int] = []
    i = 0
    n = len(rows)
    for j in range(ncols):
        if i == n:
            break
        k = next((k for k in range(i, n) if not K.is_zero(rows[k][j])), None)
        if k is None:
            continue
        rows[i], rows[k] = rows[k], rows[i]
        inv = K.inv(rows[i][j])
        pivot_row = [K.mul(v, inv) for v in rows[i]]
        rows[i] = pivot_row
        for l in range(n):
            if l != i:
                c = rows[l][j]
                if not K.is_zero(c):
                    rows[l] = [K.sub(a, K.mul(c, b)) for a, b in zip(rows[l], pivot_row)]
        pivots.append(j)
        i += 1
    return rows[: len(pivots)], pivots


def rref_den(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], int, list[int]]:
    """Fraction-free Gauss-Jordan over Z.

    Returns ``(R, den, pivots)`` with ``R / den`` the reduced row echelon
    form; every pivot entry of ``R`` equals ``den``.
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    pivots: list[int] = []
    divisor = 1
    i = 0
    for j in range(ncols):
        if i == n:
            break
        k = next((k for k in range(i, n) if rows[k][j]), None)
        if k is None:
            continue
        rows[i], rows[k] = rows[k], rows[i]
        a_i = rows[i]
        a_ii = a_i[j]
        for l in range(n):
            if l == i:
                continue
            a_l = rows[l]
            a_lj = a_l[j]
            rows[l] = [(a_ii * x - a_lj * y) // divisor for x, y in zip(a_l, a_i)]
        divisor = a_ii
        pivots.append(j)
        i += 1
    den = divisor
    rows = rows[: len(pivots)]
    if den < 0:
        rows = [[-x for x in r] for r in rows]
        den = -den
    return rows, den, pivots


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        m = lcm(*(Fraction(v).denominator for v in r)) if r else 1
        out.append([int(Fraction(v) * m) for v in r])
    return out


def rref(M: Matrix) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    K = M.field
    if M.nrows == 0 or M.ncols == 0:
        return [], []
    if isinstance(K, PrimeField):
        return _rref_prime([list(r) for r in M.rows], M.ncols, K.p)
    if isinstance(K, RationalField):
        R, den, pivots = rref_den(_integer_rows(M.rows), M.ncols)
        return [[Fraction(v, den) for v in r] for r in R], pivots
    return _rref_generic(K, [list(r) for r in M.rows], M.ncols)


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if isinstance(M.field, RationalField):
        return len(rref_den(_integer_rows(M.rows), M.ncols)[2])
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> list[tuple]:
    """Canonical right-kernel basis.

    One vector per non-pivot column ``f``: coordinate ``f`` is 1, the other
    free coordinates are 0, pivot coordinates are read off the RREF.
    """
    K = M.field
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = [K.zero] * M.ncols
        v[f] = K.one
        for row, pc in zip(R, pivots):
            v[pc] = K.neg(row[f])
        basis.append(tuple(v))
    return basis


def span_dim(field: Field, vectors: Sequence[Sequence[Any]]) -> int:
    """Dimension of the span of equal-length raw vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors have different lengths")
    return rank(Matrix(field, len(vectors), n, tuple(vectors)))
