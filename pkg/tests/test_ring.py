import random

import pytest
from hypothesis import given, strategies as st

from detset.exceptions import CompositeModulus, DivisionByZero, NoInverseInIntegerRing
from detset.ring import INTEGERS, RingKind, RingSpec, is_prime, make_ring


def test_make_ring():
    assert make_ring("PrimeField", 7).p == 7
    assert make_ring(RingKind.INTEGERS) is INTEGERS
    with pytest.raises(CompositeModulus):
        make_ring("PrimeField", 9)
    with pytest.raises(ValueError):
        make_ring("PrimeField", 1)
    with pytest.raises(ValueError):
        make_ring("Integers", 5)


def test_is_prime_matches_sieve():
    limit = 2000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(limit)] == sieve


def test_basic_ops():
    F5 = RingSpec(5)
    assert F5.add(3, 4) == 2
    assert F5.inv(2) == 3
    assert F5.neg(0) == 0 and INTEGERS.neg(0) == 0
    assert F5.canon(-1) == 4
    assert F5.signed(4) == -1 and F5.signed(2) == 2


def test_inverse_errors():
    with pytest.raises(DivisionByZero):
        RingSpec(7).inv(0)
    with pytest.raises(DivisionByZero):
        INTEGERS.inv(0)
    with pytest.raises(NoInverseInIntegerRing):
        INTEGERS.inv(2)
    assert INTEGERS.inv(-1) == -1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101, 65537])
def test_inverse_property(p):
    F = RingSpec(p)
    xs = range(1, p) if p < 200 else random.Random(p).sample(range(1, p), 500)
    assert all(F.mul(x, F.inv(x)) == 1 for x in xs)


def test_integer_ops_against_reference():
    rng = random.Random(0)
    bound = 2**63
    for _ in range(10_000):
        x, y = rng.randint(-bound, bound), rng.randint(-bound, bound)
        assert INTEGERS.add(x, y) == x + y
        assert INTEGERS.mul(x, y) == x * y
        assert INTEGERS.neg(x) == -x


@given(st.integers(), st.integers())
def test_field_ops_are_canonical(x, y):
    F = RingSpec(13)
    for v in (F.add(x, y), F.mul(x, y), F.sub(x, y), F.neg(x)):
        assert 0 <= v < 13
