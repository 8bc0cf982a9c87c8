"""Odd-degree hyperelliptic curves y^2 = f(x), their points, divisors and
rational functions, with valuations computed from local power series."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping

from . import poly
from .errors import (
    CharacteristicTwo,
    EvenDegree,
    NotSquarefree,
    PointNotOnCurve,
    UnsupportedDivisor,
    ZeroFunction,
)
from .fields import Field, PrimeField, RationalField


@dataclass(frozen=True)
class Point:
    """An affine point ``(x, y)`` or, with both coordinates ``None``, the point at infinity."""

    x: Any = None
    y: Any = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self):
        return (1, 0, 0) if self.is_infinity else (0, self.x, self.y)

    def __str__(self):
        if self.is_infinity:
            return "inf"
        return f"({_fmt(self.x)},{_fmt(self.y)})"


INFINITY = Point()


def _fmt(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


@dataclass(frozen=True)
class Curve:
    field: Field
    f: tuple

    def __post_init__(self):
        K = self.field
        if not isinstance(K, (PrimeField, RationalField)):
            raise ValueError("curves are defined over F_p or Q only")
        if K.characteristic == 2:
            raise CharacteristicTwo("the model y^2 = f(x) needs odd characteristic")
        f = poly.trim(K, self.f)
        object.__setattr__(self, "f", f)
        if poly.deg(f) < 3 or poly.deg(f) % 2 == 0:
            raise EvenDegree(f"deg f = {poly.deg(f)}; need an odd degree >= 3")
        if poly.deg(poly.gcd(K, f, poly.derivative(K, f))) > 0:
            raise NotSquarefree("f has a repeated factor")

    @property
    def genus(self) -> int:
        return (len(self.f) - 2) // 2

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        K = self.field
        return K.mul(P.y, P.y) == poly.evaluate(K, self.f, P.x)

    def check_point(self, P: Point) -> None:
        if not P.is_infinity:
            K = self.field
            if not (K.is_valid(P.x) and K.is_valid(P.y)):
                raise UnsupportedDivisor(f"{P} does not have coordinates in {K}")
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")

    def point(self, x, y) -> Point:
        K = self.field
        P = Point(K.convert(x), K.convert(y))
        self.check_point(P)
        return P

    def is_ramified(self, P: Point) -> bool:
        """Fixed by the hyperelliptic involution: Weierstrass points and infinity."""
        return P.is_infinity or self.field.is_zero(P.y)

    def conjugate(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, self.field.neg(P.y))

    def points_over(self, x0) -> list[Point]:
        K = self.field
        ys = sorted(set(K.sqrts(poly.evaluate(K, self.f, x0))))
        return [Point(x0, y) for y in ys]

    def rational_points(self, height: int = 6) -> list[Point]:
        """Affine rational points; all of them over F_p, small-height ones over Q."""
        K = self.field
        if K.is_finite:
            xs = list(K.elements())
        else:
            xs = sorted({Fraction(n, d) for d in range(1, height + 1) for n in range(-height, height + 1)})
        pts = []
        for x0 in xs:
            pts.extend(self.points_over(x0))
        return sorted(pts, key=Point.sort_key)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "f": [self.field.jsonable(c) for c in self.f]}

    def digest(self) -> str:
        """Short stable identifier derived from the canonical JSON form."""
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __str__(self):
        return f"y^2 = {poly_str(self.field, self.f)} over {self.field}"


def poly_str(K: Field, p: poly.Poly, var: str = "x") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if K.is_zero(c):
            continue
        cs = _fmt(c)
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if mono and cs == "1":
            terms.append(mono)
        elif mono:
            terms.append(f"{cs}*{mono}")
        else:
            terms.append(cs)
    return " + ".join(terms) or "0"


def curve_new(field: Field, coeffs: Iterable) -> Curve:
    """Curve ``y^2 = f(x)`` with ``f`` given constant term first."""
    return Curve(field, tuple(field.convert(c) for c in coeffs))


@dataclass(frozen=True)
class Divisor:
    """Integer combination of rational affine points plus a multiple of infinity."""

    affine: tuple = ()
    inf: int = 0

    @classmethod
    def make(cls, affine: Mapping[Point, int] | Iterable[tuple[Point, int]] = (), inf: int = 0) -> "Divisor":
        items = affine.items() if isinstance(affine, Mapping) else affine
        acc: dict[Point, int] = {}
        for P, m in items:
            if P.is_infinity:
                inf += m
            else:
                acc[P] = acc.get(P, 0) + m
        pairs = tuple(sorted(((P, m) for P, m in acc.items() if m), key=lambda pm: pm[0].sort_key()))
        return cls(pairs, inf)

    @classmethod
    def point(cls, P: Point, m: int = 1) -> "Divisor":
        return cls.make([(P, m)])

    @property
    def degree(self) -> int:
        return self.inf + sum(m for _, m in self.affine)

    def mult(self, P: Point) -> int:
        if P.is_infinity:
            return self.inf
        for Q, m in self.affine:
            if Q == P:
                return m
        return 0

    @property
    def support(self) -> list[Point]:
        pts = [P for P, _ in self.affine]
        if self.inf:
            pts.append(INFINITY)
        return pts

    def is_effective(self) -> bool:
        return self.inf >= 0 and all(m > 0 for _, m in self.affine)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor.make(list(self.affine) + list(other.affine), self.inf + other.inf)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((P, -m) for P, m in self.affine), -self.inf)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor.make([(P, n * m) for P, m in self.affine], n * self.inf)

    __rmul__ = __mul__

    def __str__(self):
        parts = [f"{m}*{P}" if m != 1 else str(P) for P, m in self.affine]
        if self.inf:
            parts.append(f"{self.inf}*inf")
        return " + ".join(parts) or "0"


def canonical_divisor(C: Curve) -> Divisor:
    """K = (2g - 2) * infinity, the divisor of dx/y on the odd model."""
    return Divisor((), 2 * C.genus - 2)


# -- truncated power series ------------------------------------------------


def _ser_mul(K, a, b, n: int) -> list:
    out = [K.zero] * n
    for i, x in enumerate(a[:n]):
        if K.is_zero(x):
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] = K.add(out[i + j], K.mul(x, b[j]))
    return out


def _ser_sqrt(K, F, s0, n: int) -> list:
    """Series ``s`` with ``s^2 = F`` and ``s(0) = s0`` (``s0`` nonzero)."""
    F = list(F) + [K.zero] * max(0, n - len(F))
    s = [s0] + [K.zero] * (n - 1)
    inv2s0 = K.inv(K.add(s0, s0))
    for k in range(1, n):
        acc = F[k]
        for i in range(1, k):
            acc = K.sub(acc, K.mul(s[i], s[k - i]))
        s[k] = K.mul(acc, inv2s0)
    return s


def _ser_eval_poly(K, p, s, n: int) -> list:
    """Truncation of ``p(s(t))`` to ``n`` terms, by Horner."""
    acc = [K.zero] * n
    for c in reversed(p):
        acc = _ser_mul(K, acc, s, n)
        acc[0] = K.add(acc[0], c)
    return acc


@dataclass(frozen=True)
class LocalExpansion:
    """Laurent expansions ``x = t^x_shift * sum(x[i] t^i)`` and likewise for ``y``.

    The uniformizer ``t`` is ``x - x0`` at unramified affine points, ``y`` at
    Weierstrass points and ``l*w*x^g/y`` at infinity, where ``l`` is the
    leading coefficient of ``f`` (so that ``x = l/t^2`` exactly).
    """

    point: Point
    order: int
    uniformizer: str
    x_shift: int
    x: tuple
    y_shift: int
    y: tuple


@lru_cache(maxsize=4096)
def local_expansion(C: Curve, P: Point, order: int) -> LocalExpansion:
    K = C.field
    if order < 1:
        raise ValueError("order must be >= 1")
    C.check_point(P)
    g = C.genus
    if P.is_infinity:
        lead = C.f[-1]
        n_w = 4 * g + 2
        W = [K.zero] * (n_w + 1)
        for i, fi in enumerate(C.f):
            W[n_w - 2 * i] = K.mul(fi, K.pow(lead, i - 2 * g - 2))
        w = _ser_sqrt(K, W, K.one, order)
        scale = K.pow(lead, g + 1)
        xs = [lead] + [K.zero] * (order - 1)
        return LocalExpansion(P, order, "l*w*x^g/y", -2, tuple(xs), -(2 * g + 1), tuple(K.mul(scale, c) for c in w))
    F = poly.taylor_shift(K, C.f, P.x)
    if not K.is_zero(P.y):
        xs = ([P.x, K.one] + [K.zero] * order)[:order]
        return LocalExpansion(P, order, "x - x0", 0, tuple(xs), 0, tuple(_ser_sqrt(K, F, P.y, order)))
    F1 = F[1] if len(F) > 1 else K.zero
    if K.is_zero(F1):
        raise AssertionError("f'(x0) = 0 at a Weierstrass point contradicts squarefreeness")
    inv_F1 = K.inv(F1)
    t2 = [K.zero] * order
    if order > 2:
        t2[2] = K.one
    higher = (K.zero, K.zero) + tuple(F[2:])
    u = [K.zero] * order
    for _ in range(order):
        rhs = _ser_eval_poly(K, higher, u, order)
        u = [K.mul(K.sub(a, b), inv_F1) for a, b in zip(t2, rhs)]
    xs = list(u)
    xs[0] = K.add(xs[0], P.x)
    ys = ([K.zero, K.one] + [K.zero] * order)[:order]
    return LocalExpansion(P, order, "y", 0, tuple(xs), 0, tuple(ys))


# -- rational functions ----------------------------------------------------


@dataclass(frozen=True)
class FunctionElement:
    """``(a(x) + b(x) y) / c(x)`` on a curve, kept with gcd(a, b, c) = 1 and c monic."""

    curve: Curve
    a: tuple
    b: tuple
    c: tuple

    @classmethod
    def make(cls, curve: Curve, a=(), b=(), c=None) -> "FunctionElement":
        K = curve.field
        a = poly.trim(K, [K.convert(v) for v in a])
        b = poly.trim(K, [K.convert(v) for v in b])
        c = poly.const(K, K.one) if c is None else poly.trim(K, [K.convert(v) for v in c])
        return cls.from_raw(curve, a, b, c)

    @classmethod
    def from_raw(cls, curve: Curve, a, b, c) -> "FunctionElement":
        K = curve.field
        if not c:
            raise ZeroDivisionError("zero denominator")
        if not a and not b:
            return cls(curve, (), (), poly.const(K, K.one))
        common = poly.gcd(K, poly.gcd(K, a, b), c)
        if poly.deg(common) > 0:
            a = poly.divmod_(K, a, common)[0]
            b = poly.divmod_(K, b, common)[0]
            c = poly.divmod_(K, c, common)[0]
        lead_inv = K.inv(c[-1])
        return cls(curve, poly.scale(K, a, lead_inv), poly.scale(K, b, lead_inv), poly.scale(K, c, lead_inv))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __mul__(self, other: "FunctionElement") -> "FunctionElement":
        K, f = self.curve.field, self.curve.f
        a = poly.add(K, poly.mul(K, self.a, other.a), poly.mul(K, poly.mul(K, self.b, other.b), f))
        b = poly.add(K, poly.mul(K, self.a, other.b), poly.mul(K, self.b, other.a))
        return FunctionElement.from_raw(self.curve, a, b, poly.mul(K, self.c, other.c))

    def __add__(self, other: "FunctionElement") -> "FunctionElement":
        K = self.curve.field
        a = poly.add(K, poly.mul(K, self.a, other.c), poly.mul(K, other.a, self.c))
        b = poly.add(K, poly.mul(K, self.b, other.c), poly.mul(K, other.b, self.c))
        return FunctionElement.from_raw(self.curve, a, b, poly.mul(K, self.c, other.c))

    def scale(self, s) -> "FunctionElement":
        K = self.curve.field
        return FunctionElement.from_raw(self.curve, poly.scale(K, self.a, s), poly.scale(K, self.b, s), self.c)

    def norm_numerator(self) -> tuple:
        """``a^2 - b^2 f``, the norm of the numerator down to k[x]."""
        K = self.curve.field
        return poly.sub(K, poly.mul(K, self.a, self.a), poly.mul(K, poly.mul(K, self.b, self.b), self.curve.f))

    def to_json(self) -> dict:
        K = self.curve.field
        return {k: [K.jsonable(v) for v in getattr(self, k)] for k in ("a", "b", "c")}

    def __str__(self):
        K = self.curve.field
        num = poly_str(K, self.a)
        if self.b:
            num = f"{num} + ({poly_str(K, self.b)})*y" if self.a else f"({poly_str(K, self.b)})*y"
        if poly.deg(self.c) == 0:
            return num
        return f"({num})/({poly_str(K, self.c)})"


def x_function(C: Curve) -> FunctionElement:
    return FunctionElement.make(C, (0, 1))


def y_function(C: Curve) -> FunctionElement:
    return FunctionElement.make(C, (), (1,))


def _numerator_valuation(C: Curve, a, b, P: Point) -> int:
    K = C.field
    g = C.genus
    if P.is_infinity:
        va = -2 * poly.deg(a) if a else None
        vb = -2 * poly.deg(b) - (2 * g + 1) if b else None
        return min(v for v in (va, vb) if v is not None)
    norm = poly.sub(K, poly.mul(K, a, a), poly.mul(K, poly.mul(K, b, b), C.f))
    k = poly.root_multiplicity(K, norm, P.x)
    ramified = C.is_ramified(P)
    # v_P(a+by) <= ord_x0(norm) unramified; = ord_x0(norm) at a Weierstrass point
    precision = (2 * k if ramified else k) + 1
    exp = local_expansion(C, P, precision)
    series = poly.add(
        K,
        _ser_eval_poly(K, a, exp.x, precision),
        _ser_mul(K, _ser_eval_poly(K, b, exp.x, precision), exp.y, precision),
    )
    series = list(series) + [K.zero] * precision
    for i in range(precision):
        if not K.is_zero(series[i]):
            return i
    raise AssertionError("valuation exceeded the norm bound")


def valuation(C: Curve, fn: FunctionElement, P: Point) -> int:
    """Order of vanishing of ``fn`` at ``P`` (negative for a pole)."""
    if fn.is_zero():
        raise ZeroFunction("the zero function has no valuation")
    C.check_point(P)
    num = _numerator_valuation(C, fn.a, fn.b, P)
    if P.is_infinity:
        return num + 2 * poly.deg(fn.c)
    den = poly.root_multiplicity(C.field, fn.c, P.x)
    return num - (2 * den if C.is_ramified(P) else den)
