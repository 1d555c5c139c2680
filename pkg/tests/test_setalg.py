from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from detset.exceptions import RingMismatch, SetTooSmall
from detset.ring import INTEGERS, RingSpec
from detset.setalg import (
    DENSE_LIMIT,
    ElemSet,
    difference_set,
    dilate,
    iter_productset,
    iter_sumset,
    iter_sumset_naive,
    negate,
    normalize_symmetric,
    parse_set,
    productset,
    sumset,
    traced_iter_productset,
    traced_iter_sumset,
    traced_productset,
)

F5, F7 = RingSpec(5), RingSpec(7)
BIG = RingSpec(1048583)  # first prime above 2**20, sparse representation


def S(ring, *xs):
    return ElemSet(ring, xs)


def brute(op, A, B, ring):
    return ElemSet(ring, {op(a, b) for a in A for b in B})


def test_representation_switch():
    assert S(F7, 1, 2).is_dense
    assert not S(INTEGERS, 1, 2).is_dense
    assert BIG.p > DENSE_LIMIT and not S(BIG, 1, 2).is_dense


def test_sumset_examples():
    assert sumset(S(F7, 1, 2), S(F7, 3)) == S(F7, 4, 5)
    assert sumset(S(F5, 0, 1), S(F5, 0, 1)) == S(F5, 0, 1, 2)
    assert sumset(S(INTEGERS, 0, 1, 3), S(INTEGERS, 0, 1, 3)).elements == (0, 1, 2, 3, 4, 6)


def test_productset_examples():
    assert productset(S(F7, 2, 3), S(F7, 0)) == S(F7, 0)
    assert productset(S(F5, 1, 2), S(F5, 1, 2)) == S(F5, 1, 2, 4)
    assert productset(S(INTEGERS, 1, 2, 3), S(INTEGERS, 1, 2, 3)).elements == (1, 2, 3, 4, 6, 9)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        sumset(S(F5, 1), S(F7, 1))


def test_dilate_examples():
    A = S(F7, 1, 2, 5)
    assert dilate(1, A) == A
    assert dilate(0, S(F7, 1, 2)) == S(F7, 0)
    assert dilate(3, S(F7, 1, 2)) == S(F7, 3, 6)


def test_iterated_examples():
    A = S(F7, 3, 5)
    assert iter_sumset(1, A) == A and iter_productset(1, A) == A
    assert iter_sumset(2, S(INTEGERS, 0, 1)).elements == (0, 1, 2)
    assert iter_sumset(8, S(F5, 0, 1)) == ElemSet.full(F5)
    for m in range(1, 6):
        assert iter_productset(m, S(F7, 0, 1)) == S(F7, 0, 1)
    assert iter_productset(2, S(F7, 2, 3)) == S(F7, 2, 4, 6)


def test_difference_set_examples():
    assert difference_set(S(F7, 5)) == S(F7, 0)
    assert difference_set(S(F7, 2, 5)) == S(F7, 0, 3, 4)
    assert difference_set(S(INTEGERS, 0, 1, 3)).elements == tuple(range(-3, 4))


def test_normalize_symmetric_examples():
    Ap, a0 = normalize_symmetric(S(F7, 2, 5))
    assert (Ap, a0) == (S(F7, 0, 1, 6), 3)
    Ap, a0 = normalize_symmetric(S(F5, 0, 1))
    assert (Ap, a0) == (S(F5, 0, 1, 4), 1)
    with pytest.raises(SetTooSmall):
        normalize_symmetric(S(F5, 3))


def test_parse_set_warns_on_collapse():
    assert parse_set("0,1,3", INTEGERS).elements == (0, 1, 3)
    with pytest.warns(UserWarning):
        A = parse_set("1,8", F7)
    assert A == S(F7, 1)


# --- properties --------------------------------------------------------------

rings = st.sampled_from([F5, F7, RingSpec(13), RingSpec(101), INTEGERS, BIG])


@st.composite
def sets(draw, ring=None, max_size=6):
    ring = ring or draw(rings)
    lo, hi = (-20, 20) if ring.p is None else (0, ring.p - 1)
    return ElemSet(ring, draw(st.lists(st.integers(lo, hi), max_size=max_size)))


@st.composite
def same_ring_sets(draw, k=2, max_size=6):
    ring = draw(rings)
    return [draw(sets(ring, max_size)) for _ in range(k)]


@given(same_ring_sets(2))
def test_sumset_and_productset_match_brute_force(pair):
    A, B = pair
    assert sumset(A, B) == brute(lambda a, b: a + b, A, B, A.ring)
    assert productset(A, B) == brute(lambda a, b: a * b, A, B, A.ring)


@given(same_ring_sets(3))
def test_commutative_associative(triple):
    A, B, C = triple
    assert sumset(A, B) == sumset(B, A)
    assert productset(A, B) == productset(B, A)
    assert sumset(sumset(A, B), C) == sumset(A, sumset(B, C))
    assert productset(productset(A, B), C) == productset(A, productset(B, C))


def test_log_domain_productset_against_brute_force():
    # large enough to leave the pairwise path
    ring = RingSpec(257)
    A = ElemSet(ring, range(0, 257, 3))
    B = ElemSet(ring, range(1, 257, 2))
    assert len(A) * len(B) > 4096
    assert productset(A, B) == brute(lambda a, b: a * b, A, B, ring)
    assert productset(A, A) == brute(lambda a, b: a * b, A, A, ring)


@given(sets(max_size=4), st.integers(1, 4))
def test_iter_sumset_matches_nested_enumeration(A, m):
    expected = ElemSet(A.ring, (sum(t) for t in product(A.elements, repeat=m))) if len(A) else ElemSet(A.ring)
    assert iter_sumset(m, A) == expected
    assert iter_sumset_naive(m, A) == expected


@given(sets(max_size=4), st.integers(1, 4))
def test_iter_productset_matches_nested_enumeration(A, m):
    def prod(t):
        r = 1
        for x in t:
            r *= x
        return r

    expected = ElemSet(A.ring, (prod(t) for t in product(A.elements, repeat=m))) if len(A) else ElemSet(A.ring)
    assert iter_productset(m, A) == expected


@settings(deadline=None, max_examples=40)
@given(sets(ring=RingSpec(101), max_size=5) | sets(ring=INTEGERS, max_size=4), st.integers(1, 40))
def test_doubling_matches_naive_iteration(A, m):
    assert iter_sumset(m, A) == iter_sumset_naive(m, A)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cauchy_davenport_exhaustive(p):
    ring = RingSpec(p)
    subsets = [ElemSet(ring, [x for x in range(p) if mask >> x & 1]) for mask in range(1, 1 << p)]
    for A in subsets:
        for B in subsets:
            assert len(sumset(A, B)) >= min(p, len(A) + len(B) - 1)


@given(same_ring_sets(2))
def test_integer_sumset_lower_bound(pair):
    A, B = pair
    if A.ring.p is None and len(A) and len(B):
        assert len(sumset(A, B)) >= len(A) + len(B) - 1


@given(sets())
def test_difference_set_symmetric(A):
    D = difference_set(A)
    assert negate(D) == D
    if len(A):
        assert 0 in D


@given(sets(ring=F7) | sets(ring=RingSpec(101)))
def test_normalize_symmetric_invariants(A):
    if len(A) < 2:
        return
    Ap, a0 = normalize_symmetric(A)
    assert negate(Ap) == Ap
    assert 0 in Ap and 1 in Ap
    assert len(Ap) >= len(A)
    assert dilate(a0, Ap) == difference_set(A)


@settings(max_examples=50)
@given(sets(max_size=4), st.integers(1, 4))
def test_trace_replay(A, m):
    if not len(A):
        return
    for traced, plain in (
        (traced_iter_sumset(m, A), iter_sumset(m, A)),
        (traced_iter_productset(m, A), iter_productset(m, A)),
    ):
        assert traced.elements == plain
        for x in plain:
            assert len(traced.decompose(x)) == m
            assert set(traced.decompose(x)) <= set(A.elements)
            assert traced.replay(x) == x


def test_traced_productset_pairs():
    A, B = S(F7, 2, 3), S(F7, 4, 5)
    pairs = traced_productset(A, B)
    assert ElemSet(F7, pairs) == productset(A, B)
    for value, (a, b) in pairs.items():
        assert F7.mul(a, b) == value
