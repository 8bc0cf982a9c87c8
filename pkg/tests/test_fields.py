import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from petrilab.errors import CharacteristicTwo, DivisionByZero, NotPrime, ReducibleModulus
from petrilab.fields import (
    QQ,
    ExtensionField,
    PrimeField,
    embedding,
    extend,
    field_make,
    finite_field,
    is_irreducible,
    is_prime,
    smallest_irreducible,
)

TOWER = [PrimeField(7), PrimeField(101), ExtensionField(2, (1, 1, 1)), finite_field(9), finite_field(27), QQ]


def _exhaustively_irreducible(p, f):
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    from itertools import product

    from petrilab import poly

    K = PrimeField(p)
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            if not poly.rem(K, tuple(f), tuple(tail) + (1,)):
                return False
    return True


def test_prime_inverse():
    F = PrimeField(7)
    assert F.inv(3) == 5
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_field_make_kinds():
    assert field_make({"kind": "prime", "p": 7}) == PrimeField(7)
    assert field_make({"kind": "rational"}) is QQ
    F4 = field_make({"kind": "extension", "p": 2, "modulus": [1, 1, 1]})
    assert F4.order == 4
    with pytest.raises(CharacteristicTwo):
        field_make({"kind": "extension", "p": 2, "modulus": [1, 1, 1]}, allow_char_two=False)
    with pytest.raises(NotPrime):
        field_make({"kind": "prime", "p": 9})
    with pytest.raises(ReducibleModulus):
        ExtensionField(2, (1, 0, 1))


def test_is_prime_small():
    naive = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == naive
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3)])
def test_rabin_matches_trial_division(p, k):
    from itertools import product

    for tail in product(range(p), repeat=k):
        f = tuple(tail) + (1,)
        assert is_irreducible(p, f) == _exhaustively_irreducible(p, f)


def test_smallest_irreducible_is_canonical():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)


@pytest.mark.parametrize("K", TOWER, ids=str)
def test_field_axioms(K):
    rng = random.Random(str(K))
    for _ in range(200):
        a, b, c = (K.random_element(rng) for _ in range(3))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.add(a, K.neg(a)) == K.zero
        if not K.is_zero(a):
            assert K.mul(a, K.inv(a)) == K.one
            assert K.div(K.mul(a, b), a) == b


@given(st.integers(), st.integers(min_value=1, max_value=10**6), st.integers(), st.integers(min_value=1))
def test_rational_field_exact(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    assert QQ.sub(QQ.add(x, y), y) == x
    assert QQ.jsonable(QQ.convert(QQ.jsonable(x))) == QQ.jsonable(x)


def test_rational_sqrts():
    assert set(QQ.sqrts(Fraction(9, 4))) == {Fraction(3, 2), Fraction(-3, 2)}
    assert QQ.sqrts(Fraction(2)) == []


def test_extension_multiplicative_group_is_cyclic():
    F = finite_field(16)
    g = F.generator()
    seen = {F.pow(g, i) for i in range(15)}
    assert len(seen) == 15


@pytest.mark.parametrize("q,k", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_embedding_is_a_homomorphism(q, k):
    src = finite_field(q)
    dst = extend(src, k)
    assert dst.order == q**k
    phi = embedding(src, dst)
    elems = list(src.elements())
    for a in elems:
        for b in elems:
            assert phi(src.mul(a, b)) == dst.mul(phi(a), phi(b))
            assert phi(src.add(a, b)) == dst.add(phi(a), phi(b))


def test_prime_convert_fraction_strings():
    F = PrimeField(7)
    assert F.convert("1/2") == 4
    assert F.convert(Fraction(3, 2)) == 5
    assert F.convert(-1) == 6
