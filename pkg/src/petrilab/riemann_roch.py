"""Riemann-Roch spaces L(D) on odd hyperelliptic models, and the h^0 /
Clifford bookkeeping built on them.

Every h in L(D) has the form (a + b y)/c where c(x) clears the affine poles
allowed by D.  The numerator a + b y is then a polynomial function whose pole
order at infinity is bounded, so it lies in the span of x^i (pole order 2i)
and x^j y (pole order 2j + 2g + 1).  The affine conditions are linear in the
coefficients and are read off truncated local expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import poly
from .curve import (
    Curve,
    Divisor,
    FunctionElement,
    Point,
    _ser_mul,
    canonical_divisor,
    local_expansion,
)
from .errors import NotEffective, NotSpecial
from .linalg import Matrix, kernel_basis


@dataclass(frozen=True)
class FunctionSpace:
    curve: Curve
    divisor: Divisor
    basis: tuple
    denominator: tuple = ()
    monomials: tuple = ()  # (power of x, has y factor) per coordinate
    coords: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords) -> FunctionElement:
        """The function with the given coordinates on ``monomials`` over ``denominator``."""
        K = self.curve.field
        a = [K.zero] * (max((i for i, y in self.monomials if not y), default=-1) + 1)
        b = [K.zero] * (max((i for i, y in self.monomials if y), default=-1) + 1)
        for (i, has_y), v in zip(self.monomials, coords):
            if has_y:
                b[i] = K.add(b[i], v)
            else:
                a[i] = K.add(a[i], v)
        return FunctionElement.from_raw(self.curve, poly.trim(K, a), poly.trim(K, b), self.denominator)

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [h.to_json() for h in self.basis]}


def check_divisor(C: Curve, D: Divisor) -> None:
    for P, _ in D.affine:
        C.check_point(P)


def rr_space(C: Curve, D: Divisor) -> FunctionSpace:
    """Basis of L(D) = {h : div(h) + D >= 0}, deterministic (RREF-derived)."""
    check_divisor(C, D)
    return _rr_space(C, D)


@lru_cache(maxsize=8192)
def _rr_space(C: Curve, D: Divisor) -> FunctionSpace:
    K = C.field
    g = C.genus
    if D.degree < 0:
        return FunctionSpace(C, D, ())

    by_x: dict = {}
    for P, _ in D.affine:
        by_x.setdefault(P.x, None)
    denominator = poly.const(K, K.one)
    conditions: list[tuple[Point, int]] = []
    for x0 in by_x:
        over = C.points_over(x0)
        mults = [D.mult(P) for P in over]
        if len(over) == 1:
            e = (max(mults[0], 0) + 1) // 2
            need = [2 * e - mults[0]]
        else:
            e = max(max(mults), 0)
            need = [e - m for m in mults]
        denominator = poly.mul(K, denominator, poly.power(K, poly.linear(K, x0), e))
        conditions.extend((P, n) for P, n in zip(over, need) if n > 0)

    pole_bound = D.inf + 2 * poly.deg(denominator)
    if pole_bound < 0:
        return FunctionSpace(C, D, (), denominator)
    monomials = [(i, False) for i in range(pole_bound // 2 + 1)]
    monomials += [(j, True) for j in range((pole_bound - 2 * g - 1) // 2 + 1) if 2 * j + 2 * g + 1 <= pole_bound]

    rows = []
    for P, n in conditions:
        rows.extend(_condition_rows(C, P, n, monomials))
    M = Matrix(K, len(rows), len(monomials), tuple(rows))
    coords = tuple(kernel_basis(M))
    space = FunctionSpace(C, D, (), denominator, tuple(monomials), coords)
    basis = tuple(space.element(v) for v in coords)
    return FunctionSpace(C, D, basis, denominator, tuple(monomials), coords)


def _condition_rows(C: Curve, P: Point, n: int, monomials) -> list[tuple]:
    """Rows forcing the first ``n`` local coefficients of a + b y at ``P`` to vanish."""
    K = C.field
    exp = local_expansion(C, P, n)
    top = max(i for i, _ in monomials)
    powers = [[K.one] + [K.zero] * (n - 1)]
    for _ in range(top):
        powers.append(_ser_mul(K, powers[-1], exp.x, n))
    columns = [powers[i] if not has_y else _ser_mul(K, powers[i], exp.y, n) for i, has_y in monomials]
    return [tuple(col[l] for col in columns) for l in range(n)]


def h0(C: Curve, D: Divisor) -> int:
    return rr_space(C, D).dim


def rr_check(C: Curve, D: Divisor) -> bool:
    """Riemann-Roch: h0(D) - h0(K - D) == deg D - g + 1."""
    K = canonical_divisor(C)
    return h0(C, D) - h0(C, K - D) == D.degree - C.genus + 1


def is_special(C: Curve, D: Divisor) -> bool:
    return h0(C, canonical_divisor(C) - D) > 0


def clifford_index_divisor(C: Curve, D: Divisor) -> int | None:
    """``deg D - 2r`` when h0(D) >= 2 and h0(K - D) >= 2; ``None`` if not eligible."""
    n = h0(C, D)
    if n < 2 or h0(C, canonical_divisor(C) - D) < 2:
        return None
    return D.degree - 2 * (n - 1)


def clifford_theorem_check(C: Curve, D: Divisor) -> bool:
    """Clifford's inequality h0(D) <= deg(D)/2 + 1 for effective special D."""
    if not D.is_effective():
        raise NotEffective(f"{D} is not effective")
    if not is_special(C, D):
        raise NotSpecial(f"{D} is not special")
    return 2 * (h0(C, D) - 1) <= D.degree


def curve_clifford_lower_witness(C: Curve) -> tuple[Divisor, int]:
    """The hyperelliptic pencil 2*inf, which has Clifford index 0."""
    return Divisor((), 2), 0
