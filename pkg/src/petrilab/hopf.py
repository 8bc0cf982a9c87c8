"""Bilinear tensors over finite fields and rank loci of matrix spaces.

Covers the two computational facts behind the lower bound a + b - 1 for the
image of a bilinear map that is injective on each factor: whether a given
tensor meets the hypothesis (checked by projective enumeration, optionally
after base change to F_{q^k}), and the point counts of the rank loci
X_r = {rank <= r} whose polynomial degree exhibits their codimension
(m - r)(n - r).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import poly
from .errors import BudgetExceeded, InfiniteField, InvalidDims, InvalidRank
from .fields import QQ, Field, embedding, extend, finite_field
from .linalg import Matrix, rank

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class BilinearTensor:
    """T(e_i, f_j) = sum_k coeffs[(i*b + j)*c + k] g_k."""

    field: Field
    dims: tuple
    coeffs: tuple

    def __post_init__(self):
        a, b, c = self.dims
        if min(a, b, c) < 1:
            raise InvalidDims(f"dims {self.dims} must be positive")
        if len(self.coeffs) != a * b * c:
            raise InvalidDims(f"expected {a * b * c} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_function(cls, field: Field, dims, fn) -> "BilinearTensor":
        """Build from ``fn(i, j) -> length-c sequence``."""
        a, b, c = dims
        coeffs = []
        for i in range(a):
            for j in range(b):
                coeffs.extend(field.convert(v) for v in fn(i, j))
        return cls(field, tuple(dims), tuple(coeffs))

    def t(self, i: int, j: int, k: int):
        a, b, c = self.dims
        return self.coeffs[(i * b + j) * c + k]

    def b_slices(self) -> list[Matrix]:
        """For each basis vector f_j of B, the c x a matrix of A -> C."""
        a, b, c = self.dims
        return [
            Matrix(self.field, c, a, tuple(tuple(self.t(i, j, k) for i in range(a)) for k in range(c)))
            for j in range(b)
        ]

    def a_slices(self) -> list[Matrix]:
        """For each basis vector e_i of A, the c x b matrix of B -> C."""
        a, b, c = self.dims
        return [
            Matrix(self.field, c, b, tuple(tuple(self.t(i, j, k) for j in range(b)) for k in range(c)))
            for i in range(a)
        ]

    def flattening(self) -> Matrix:
        a, b, c = self.dims
        cols = [[self.t(i, j, k) for k in range(c)] for i in range(a) for j in range(b)]
        return Matrix(self.field, c, a * b, tuple(tuple(col[k] for col in cols) for k in range(c)))

    def base_change(self, target: Field) -> "BilinearTensor":
        embed = embedding(self.field, target)
        return BilinearTensor(target, self.dims, tuple(embed(v) for v in self.coeffs))

    def scaled(self, s) -> "BilinearTensor":
        K = self.field
        s = K.convert(s)
        return BilinearTensor(K, self.dims, tuple(K.mul(s, v) for v in self.coeffs))

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "dims": list(self.dims),
            "coeffs": [self.field.jsonable(v) for v in self.coeffs],
        }


def polynomial_multiplication_tensor(field: Field, a: int, b: int) -> BilinearTensor:
    """(deg < a) x (deg < b) -> (deg < a + b - 1) polynomial multiplication."""
    c = a + b - 1
    return BilinearTensor.from_function(field, (a, b, c), lambda i, j: [1 if k == i + j else 0 for k in range(c)])


def field_multiplication_tensor(ext: Field) -> BilinearTensor:
    """Multiplication of an extension F_p[t]/(m) viewed as an F_p-bilinear map."""
    base = ext.base
    n = ext.degree
    basis = [ext.convert([1 if k == i else 0 for k in range(n)]) for i in range(n)]
    return BilinearTensor.from_function(base, (n, n, n), lambda i, j: ext.mul(basis[i], basis[j]))


def projective_points(K: Field, n: int) -> Iterator[tuple]:
    """Representatives of P^(n-1)(K): first nonzero coordinate equal to one."""
    elems = list(K.elements())
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            yield (K.zero,) * lead + (K.one,) + tail


def projective_count(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def _combination(K: Field, mats: list[Matrix], w) -> Matrix:
    M0 = mats[0]
    rows = []
    for r in range(M0.nrows):
        row = []
        for col in range(M0.ncols):
            acc = K.zero
            for M, x in zip(mats, w):
                if not K.is_zero(x):
                    acc = K.add(acc, K.mul(x, M.rows[r][col]))
            row.append(acc)
        rows.append(tuple(row))
    return Matrix(K, M0.nrows, M0.ncols, tuple(rows))


def injective_on_factors(T: BilinearTensor, budget: int = DEFAULT_BUDGET) -> bool:
    """Every nonzero b gives an injective A -> C and every nonzero a an injective B -> C."""
    K = T.field
    if not K.is_finite:
        raise InfiniteField("injectivity on factors is decided by enumeration over a finite field")
    a, b, c = T.dims
    q = K.order
    if projective_count(q, a) + projective_count(q, b) > budget:
        raise BudgetExceeded(f"{projective_count(q, a) + projective_count(q, b)} points exceed budget {budget}")
    bs = T.b_slices()
    if any(rank(_combination(K, bs, w)) < a for w in projective_points(K, b)):
        return False
    as_ = T.a_slices()
    return all(rank(_combination(K, as_, w)) == b for w in projective_points(K, a))


def image_span_dim(T: BilinearTensor) -> int:
    return rank(T.flattening())


@dataclass(frozen=True)
class HopfWitness:
    """Coefficients w over F_{q^k} with sum_j w_j M_j of rank < a."""

    degree: int
    field: Field
    coefficients: tuple
    rank: int

    def verify(self, T: BilinearTensor) -> bool:
        Tk = T.base_change(self.field)
        return rank(_combination(self.field, Tk.b_slices(), self.coefficients)) == self.rank < T.dims[0]

    def to_json(self) -> dict:
        return {
            "found": True,
            "degree": self.degree,
            "field": self.field.to_json(),
            "coefficients": [self.field.jsonable(v) for v in self.coefficients],
            "rank": self.rank,
        }


@dataclass(frozen=True)
class NotFoundUpTo:
    degree: int

    def to_json(self) -> dict:
        return {"found": False, "searched_up_to": self.degree}


def hopf_witness_search(T: BilinearTensor, max_ext_degree: int, budget: int = DEFAULT_BUDGET) -> HopfWitness | NotFoundUpTo:
    """Smallest k <= max_ext_degree such that some nonzero combination of the
    maps A -> C is singular over F_{q^k}."""
    if not T.field.is_finite:
        raise InfiniteField("witness search runs over finite fields")
    a, b, _ = T.dims
    for k in range(1, max_ext_degree + 1):
        F = extend(T.field, k)
        if projective_count(F.order, b) > budget:
            raise BudgetExceeded(f"P^{b - 1}(F_{F.order}) exceeds budget {budget}")
        mats = T.base_change(F).b_slices()
        for w in projective_points(F, b):
            rk = rank(_combination(F, mats, w))
            if rk < a:
                return HopfWitness(k, F, w, rk)
    return NotFoundUpTo(max_ext_degree)


# -- rank loci -----------------------------------------------------------------


@dataclass(frozen=True)
class RankCountPolynomial:
    """|{M in F_q^(m x n) : rank M <= r}| as an integer polynomial in q."""

    m: int
    n: int
    r: int
    coeffs: tuple  # constant term first

    def __call__(self, q: int) -> int:
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def codimension(self) -> int:
        return self.m * self.n - self.degree

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r, "coeffs": list(self.coeffs), "degree": self.degree, "codimension": self.codimension}


def _qpoly(*terms: tuple[int, int]) -> tuple:
    """Sparse (exponent, coefficient) terms to a dense polynomial over Q."""
    top = max(e for e, _ in terms)
    dense = [Fraction(0)] * (top + 1)
    for e, c in terms:
        dense[e] += c
    return poly.trim(QQ, dense)


def gaussian_binomial(m: int, s: int) -> tuple:
    """[m choose s]_q with integer coefficients, constant term first."""
    num = den = poly.const(QQ, Fraction(1))
    for i in range(s):
        num = poly.mul(QQ, num, _qpoly((m - i, 1), (0, -1)))
        den = poly.mul(QQ, den, _qpoly((i + 1, 1), (0, -1)))
    quo, rem = poly.divmod_(QQ, num, den)
    assert not rem and all(c.denominator == 1 for c in quo)
    return quo


def count_rank_le(m: int, n: int, r: int) -> RankCountPolynomial:
    if not 0 <= r <= min(m, n):
        raise InvalidRank(f"r = {r} outside 0..{min(m, n)}")
    total: tuple = ()
    for s in range(r + 1):
        term = gaussian_binomial(m, s)
        for i in range(s):
            term = poly.mul(QQ, term, _qpoly((n, 1), (i, -1)))
        total = poly.add(QQ, total, term)
    return RankCountPolynomial(m, n, r, tuple(int(c) for c in total))


@lru_cache(maxsize=None)
def _rank_distribution(m: int, n: int, q: int) -> tuple:
    K = finite_field(q)
    elems = list(K.elements())
    counts = [0] * (min(m, n) + 1)
    for entries in itertools.product(elems, repeat=m * n):
        rows = tuple(entries[i * n : (i + 1) * n] for i in range(m))
        counts[rank(Matrix(K, m, n, rows))] += 1
    return tuple(counts)


def brute_count_rank_le(m: int, n: int, r: int, q: int, budget: int = 1 << 24) -> int:
    """Exhaustive count of m x n matrices over F_q with rank <= r."""
    if not 0 <= r <= min(m, n):
        raise InvalidRank(f"r = {r} outside 0..{min(m, n)}")
    if q ** (m * n) > budget:
        raise BudgetExceeded(f"{q}^{m * n} matrices exceed budget {budget}")
    return sum(_rank_distribution(m, n, q)[: r + 1])


@dataclass(frozen=True)
class HopfArgument:
    a: int
    b: int
    c_input: int | None
    c: int
    codim_X1: int
    codim_X1_from_count: int
    dim_H: int
    intersection_forced: bool
    below_reduction: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def hopf_dimension_argument(a: int, b: int, c: int | None = None) -> HopfArgument:
    """Dimension count for the rank-deficient maps A -> C meeting the span of
    the b injective maps, after shrinking C to dimension a + b - 2."""
    if a < 1 or b < 2:
        raise InvalidDims(f"need a >= 1 and b >= 2, got a = {a}, b = {b}")
    reduced = a + b - 2
    codim = (reduced - (a - 1)) * (a - (a - 1))
    from_count = count_rank_le(reduced, a, a - 1).codimension
    return HopfArgument(
        a=a, b=b, c_input=c, c=reduced, codim_X1=codim, codim_X1_from_count=from_count,
        dim_H=b - 1, intersection_forced=codim <= b - 1,
        below_reduction=c is not None and c < reduced,
    )
