"""Exact fields: prime fields F_p, extensions F_p[t]/(m), and the rationals.

A field object owns the arithmetic on *raw* values (``int`` for F_p,
``Fraction`` for Q, a coefficient tuple for extensions) so that the dense
linear algebra can run without wrapper overhead.  ``FieldElement`` is the
user-facing wrapper with operator overloading.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator

from . import poly
from .errors import (
    CharacteristicTwo,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < 1681:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface.  Subclasses are frozen dataclasses, hence hashable."""

    zero: Any
    one: Any

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def order(self) -> int | None:
        """Number of elements, or ``None`` for an infinite field."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError(f"{self!r} is not enumerable")

    def sqrts(self, a) -> list:
        """All square roots of ``a`` lying in this field."""
        if self.is_zero(a):
            return [self.zero]
        return [y for y in self.elements() if self.mul(y, y) == a]


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    zero = 0
    one = 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        raise TypeError(f"cannot interpret {value!r} as an element of F_{self.p}")

    def is_valid(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def elements(self):
        return iter(range(self.p))

    def random_element(self, rng: random.Random):
        return rng.randrange(self.p)

    def sqrts(self, a) -> list:
        return [y for y in _sqrt_table(self.p).get(a % self.p, ())]

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def jsonable(self, a):
        return a

    def __str__(self):
        return f"F_{self.p}"


@lru_cache(maxsize=None)
def _sqrt_table(p: int) -> dict[int, tuple[int, ...]]:
    table: dict[int, list[int]] = {}
    for y in range(p):
        table.setdefault(y * y % p, []).append(y)
    return {k: tuple(v) for k, v in table.items()}


@dataclass(frozen=True)
class RationalField(Field):
    zero = Fraction(0)
    one = Fraction(1)

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def order(self) -> None:
        return None

    @property
    def degree(self) -> int:
        return 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in Q")
        return Fraction(a) / b

    def from_int(self, n: int):
        return Fraction(n)

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot interpret {value!r} as a rational number")

    def is_valid(self, a) -> bool:
        return isinstance(a, Fraction)

    def random_element(self, rng: random.Random, height: int = 9):
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def sqrts(self, a) -> list:
        a = Fraction(a)
        if a == 0:
            return [Fraction(0)]
        if a < 0:
            return []
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return []
        root = Fraction(n, d)
        return [root, -root]

    def to_json(self) -> dict:
        return {"kind": "rational"}

    def jsonable(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return _json_int(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __str__(self):
        return "Q"


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def _json_int(n: int):
    return n if abs(n) < 2**53 else str(n)


@dataclass(frozen=True)
class ExtensionField(Field):
    """F_p[t]/(modulus) with ``modulus`` monic irreducible, constant term first."""

    p: int
    modulus: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        base = PrimeField(self.p)
        m = poly.trim(base, [c % self.p for c in self.modulus])
        if len(m) < 2 or m[-1] != 1:
            raise ReducibleModulus(f"modulus {self.modulus} must be monic of degree >= 1")
        if not is_irreducible(self.p, m):
            raise ReducibleModulus(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", m)

    @property
    def base(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.degree

    def _pad(self, c) -> tuple:
        return tuple(c) + (0,) * (self.degree - len(c))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        K = self.base
        return self._pad(poly.rem(K, poly.mul(K, poly.trim(K, a), poly.trim(K, b)), self.modulus))

    def inv(self, a):
        if not any(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        return self.pow(a, self.order - 2)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (tuple, list)):
            if len(value) > self.degree:
                raise ValueError(f"too many coefficients for {self}")
            return self._pad(tuple(int(c) % self.p for c in value))
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def is_valid(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(isinstance(c, int) and 0 <= c < self.p for c in a)
        )

    def generator(self):
        """The class of ``t``."""
        return self.convert((0, 1)) if self.degree > 1 else self.from_int(0)

    def elements(self):
        return (tuple(c) for c in itertools.product(range(self.p), repeat=self.degree))

    def random_element(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def to_json(self) -> dict:
        return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}

    def jsonable(self, a):
        return list(a)

    def __str__(self):
        return f"F_{self.p}^{self.degree}"


QQ = RationalField()


@dataclass(frozen=True)
class FieldElement:
    """An element together with its field; arithmetic via operators."""

    field: Field
    value: Any

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}({self.field.jsonable(self.value)!r})"


def field_make(desc: dict | str, *, allow_char_two: bool = True) -> Field:
    """Build a field from a description such as ``{"kind": "prime", "p": 7}``.

    Accepted kinds are ``prime``, ``extension`` (with ``modulus``, constant
    term first) and ``rational``.  Curve code passes ``allow_char_two=False``.
    """
    if isinstance(desc, str):
        desc = {"kind": desc}
    kind = desc.get("kind")
    if kind == "rational":
        return QQ
    p = int(desc["p"])
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2 and not allow_char_two:
        raise CharacteristicTwo("characteristic 2 is not supported here")
    if kind == "prime":
        return PrimeField(p)
    if kind == "extension":
        modulus = desc.get("modulus")
        if modulus is None:
            return extension_of_degree(p, int(desc["degree"]))
        return ExtensionField(p, tuple(int(c) for c in modulus))
    raise ValueError(f"unknown field kind {kind!r}")


def is_irreducible(p: int, f) -> bool:
    """Rabin's test for a monic ``f`` (constant-first coefficients) over F_p."""
    K = PrimeField(p)
    f = poly.monic(K, poly.trim(K, [c % p for c in f]))
    n = poly.deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    if poly.sub(K, poly.powmod(K, x, p**n, f), poly.rem(K, x, f)):
        return False
    for q in _prime_factors(n):
        h = poly.sub(K, poly.powmod(K, x, p ** (n // q), f), x)
        if poly.deg(poly.gcd(K, f, h)) > 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple:
    """Smallest monic irreducible of degree ``k`` over F_p.

    Candidates are ordered by the integer sum(c_i * p**i) over the
    non-leading coefficients, so x^2+x+1 is returned for (2, 2).
    """
    for code in range(p**k):
        coeffs = []
        for _ in range(k):
            code, c = divmod(code, p)
            coeffs.append(c)
        f = tuple(coeffs) + (1,)
        if is_irreducible(p, f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


def extension_of_degree(p: int, k: int) -> Field:
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, smallest_irreducible(p, k))


def extend(field: Field, k: int) -> Field:
    """The degree-``k`` extension of a finite field, built over its prime field."""
    if not field.is_finite:
        raise ValueError("only finite fields are extended")
    if k == 1:
        return field
    return extension_of_degree(field.characteristic, field.degree * k)


def finite_field(q: int) -> Field:
    """The field with ``q`` elements (canonical modulus for prime powers)."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, n = 0, q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1 or not is_prime(p):
        raise NotPrime(f"{q} is not a prime power")
    return extension_of_degree(p, k)


def embedding(src: Field, dst: Field) -> Callable[[Any], Any]:
    """A field homomorphism src -> dst for finite fields with degree dividing."""
    if src == dst:
        return lambda a: a
    if src.characteristic != dst.characteristic or dst.degree % src.degree:
        raise ValueError(f"{src} does not embed in {dst}")
    if isinstance(src, PrimeField):
        return dst.from_int
    root = None
    for z in dst.elements():
        acc = dst.zero
        for c in reversed(src.modulus):
            acc = dst.add(dst.mul(acc, z), dst.from_int(c))
        if dst.is_zero(acc):
            root = z
            break
    assert root is not None, "a finite extension contains all roots of the modulus"
    powers = [dst.pow(root, i) for i in range(src.degree)]

    def embed(a):
        acc = dst.zero
        for c, w in zip(a, powers):
            if c:
                acc = dst.add(acc, dst.mul(dst.from_int(c), w))
        return acc

    return embed
