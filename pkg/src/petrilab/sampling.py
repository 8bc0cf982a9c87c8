"""Seeded generators for curves and divisors used by the property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from . import poly
from .curve import INFINITY, Curve, Divisor, Point
from .errors import PetriLabError
from .fields import QQ, Field, PrimeField
from .riemann_roch import h0, is_special


def rng_for(*parts) -> random.Random:
    """Independent deterministic stream for a tuple of labels."""
    return random.Random(":".join(str(p) for p in parts))


def _squarefree(K: Field, f) -> bool:
    return poly.deg(poly.gcd(K, f, poly.derivative(K, f))) == 0


def random_curve(rng: random.Random, field: Field, genus: int) -> Curve:
    """Monic squarefree f of degree 2g + 1.

    Over Q the polynomial has the shape q(x)^2 + prod (x - a_i), which puts
    rational points above every a_i.
    """
    n = 2 * genus + 1
    while True:
        if field.is_finite:
            f = tuple(field.random_element(rng) for _ in range(n)) + (field.one,)
        else:
            roots = rng.sample(range(-6, 7), n)
            f = (Fraction(1),)
            for a in roots:
                f = poly.mul(QQ, f, poly.linear(QQ, Fraction(a)))
            q = tuple(Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(0, genus)))
            f = poly.add(QQ, f, poly.mul(QQ, q, q))
        if _squarefree(field, f):
            return Curve(field, f)


@lru_cache(maxsize=None)
def curve_for(p: int | None, genus: int, index: int = 0) -> Curve:
    """Cached reproducible curve: ``p=None`` means Q."""
    field = QQ if p is None else PrimeField(p)
    return random_curve(rng_for("curve", p, genus, index), field, genus)


@lru_cache(maxsize=None)
def affine_points(C: Curve) -> tuple:
    return tuple(C.rational_points())


def generic_points(C: Curve) -> list[Point]:
    """One non-Weierstrass point over each x that has any, sorted."""
    seen = set()
    out = []
    for P in affine_points(C):
        if not C.is_ramified(P) and P.x not in seen:
            seen.add(P.x)
            out.append(P)
    return out


def random_divisor(rng: random.Random, C: Curve, max_points: int = 4, mult_range=(-2, 3)) -> Divisor:
    pts = affine_points(C)
    chosen = rng.sample(pts, min(len(pts), rng.randint(0, max_points)))
    lo, hi = mult_range
    affine = {P: rng.choice([m for m in range(lo, hi + 1) if m]) for P in chosen}
    span = 2 * C.genus + 2
    return Divisor.make(affine, rng.randint(-span // 2, span))


def pencil_divisor(rng: random.Random, C: Curve) -> Divisor:
    """A divisor in the class of 2*inf: the fibre at infinity, a conjugate pair or 2W."""
    pts = affine_points(C)
    choice = rng.random()
    if choice < 0.4 or not pts:
        return Divisor((), 2)
    P = rng.choice(pts)
    if C.is_ramified(P):
        return Divisor.point(P, 2)
    return Divisor.make({P: 1, C.conjugate(P): 1})


def structured_special(rng: random.Random, C: Curve, min_r: int = 0) -> Divisor:
    """k pencil fibres plus m further points with k + m <= g - 1."""
    g = C.genus
    k = rng.randint(max(min_r, 0), g - 1)
    m = rng.randint(0, g - 1 - k)
    D = Divisor()
    for _ in range(k):
        D = D + pencil_divisor(rng, C)
    pts = affine_points(C)
    for P in rng.sample(pts, min(m, len(pts))):
        D = D + Divisor.point(P)
    return D


def special_effective(rng: random.Random, C: Curve, min_r: int = 0, tries: int = 200) -> Divisor:
    """Effective special divisor with h0 >= min_r + 1.

    Most draws come from the structured generator; the rest are uniform
    effective divisors of degree <= 2g - 2 kept only when special.
    """
    g = C.genus
    pts = affine_points(C)
    for _ in range(tries):
        if rng.random() < 0.7:
            D = structured_special(rng, C, min_r)
        else:
            deg = rng.randint(1, 2 * g - 2)
            inf = rng.randint(0, deg)
            affine: dict = {}
            for _ in range(deg - inf):
                P = rng.choice(pts) if pts else INFINITY
                if P.is_infinity:
                    inf += 1
                else:
                    affine[P] = affine.get(P, 0) + 1
            D = Divisor.make(affine, inf)
        if D.degree >= 1 and is_special(C, D) and h0(C, D) >= min_r + 1:
            return D
    raise PetriLabError(f"no special divisor with r >= {min_r} found on {C}")


def hyperelliptic_family(C: Curve):
    """Yield (k, m, D) with D = k*(2 inf) + P_1 + ... + P_m, the P_i
    non-Weierstrass with distinct x, k >= 1 and k + m <= g - 1."""
    g = C.genus
    pts = generic_points(C)
    for k in range(1, g):
        for m in range(0, g - k):
            if m > len(pts):
                break
            yield k, m, Divisor.make({P: 1 for P in pts[:m]}, 2 * k)
