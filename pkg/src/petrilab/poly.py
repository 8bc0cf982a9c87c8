"""Dense univariate polynomials over an exact field.

Polynomials are tuples of raw field values, constant term first, with no
trailing zeros (the zero polynomial is the empty tuple).  Every function
takes the field ``K`` explicitly, in the style of domain-based dense
arithmetic: ``K`` supplies ``zero``, ``one``, ``add``, ``sub``, ``mul``,
``neg``, ``inv`` and ``is_zero``.
"""

from __future__ import annotations

from typing import Any, Sequence

Poly = tuple


def trim(K, coeffs: Sequence[Any]) -> Poly:
    coeffs = list(coeffs)
    while coeffs and K.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def deg(p: Poly) -> int:
    """Degree, with ``deg(0) == -1``."""
    return len(p) - 1


def const(K, c) -> Poly:
    return trim(K, (c,))


def monomial(K, n: int, c=None) -> Poly:
    c = K.one if c is None else c
    return trim(K, (K.zero,) * n + (c,))


def add(K, p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = K.add(out[i], c)
    return trim(K, out)


def neg(K, p: Poly) -> Poly:
    return tuple(K.neg(c) for c in p)


def sub(K, p: Poly, q: Poly) -> Poly:
    return add(K, p, neg(K, q))


def scale(K, p: Poly, c) -> Poly:
    if K.is_zero(c):
        return ()
    return trim(K, [K.mul(a, c) for a in p])


def mul(K, p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [K.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if K.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(K, out)


def power(K, p: Poly, n: int) -> Poly:
    result: Poly = const(K, K.one)
    base = p
    while n:
        if n & 1:
            result = mul(K, result, base)
        n >>= 1
        if n:
            base = mul(K, base, base)
    return result


def divmod_(K, p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        from .errors import DivisionByZero

        raise DivisionByZero("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead_inv = K.inv(q[-1])
    quot = [K.zero] * max(len(p) - dq, 0)
    for i in range(len(p) - 1 - dq, -1, -1):
        c = K.mul(rem[i + dq], lead_inv)
        quot[i] = c
        if K.is_zero(c):
            continue
        for j, b in enumerate(q):
            rem[i + j] = K.sub(rem[i + j], K.mul(c, b))
    return trim(K, quot), trim(K, rem[:dq])


def rem(K, p: Poly, q: Poly) -> Poly:
    return divmod_(K, p, q)[1]


def monic(K, p: Poly) -> Poly:
    if not p:
        return p
    return scale(K, p, K.inv(p[-1]))


def gcd(K, p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) == 0``."""
    while q:
        p, q = q, rem(K, p, q)
    return monic(K, p)


def derivative(K, p: Poly) -> Poly:
    return trim(K, [K.mul(K.from_int(i), c) for i, c in enumerate(p)][1:])


def evaluate(K, p: Poly, x):
    acc = K.zero
    for c in reversed(p):
        acc = K.add(K.mul(acc, x), c)
    return acc


def taylor_shift(K, p: Poly, x0) -> Poly:
    """Coefficients of ``p(x0 + t)`` as a polynomial in ``t``."""
    out = list(p)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] = K.add(out[j], K.mul(x0, out[j + 1]))
    return trim(K, out)


def root_multiplicity(K, p: Poly, x0) -> int:
    """Order of vanishing of the nonzero polynomial ``p`` at ``x0``."""
    shifted = taylor_shift(K, p, x0)
    k = 0
    while k < len(shifted) and K.is_zero(shifted[k]):
        k += 1
    return k


def linear(K, x0) -> Poly:
    """The monic polynomial ``x - x0``."""
    return trim(K, (K.neg(x0), K.one))


def powmod(K, p: Poly, n: int, modulus: Poly) -> Poly:
    result: Poly = rem(K, const(K, K.one), modulus)
    base = rem(K, p, modulus)
    while n:
        if n & 1:
            result = rem(K, mul(K, result, base), modulus)
        n >>= 1
        if n:
            base = rem(K, mul(K, base, base), modulus)
    return result
