import json
from fractions import Fraction
from itertools import combinations

import pytest

from detset.bounds import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    check_cauchy_davenport,
    check_cor3,
    check_cor4,
    check_example1,
    check_glk_inner,
    check_lemma2,
    cor3_rhs,
    cor4_threshold,
    glk_multiplier,
    reports_to_csv,
)
from detset.enumerate import dset_naive
from detset.ring import INTEGERS, RingSpec
from detset.setalg import ElemSet


def test_glk_multiplier():
    assert [glk_multiplier(n) for n in (2, 3, 4)] == [3, 13, 53]
    # (5/24)*4 - 1/3 = 1/2
    with pytest.raises(ValueError):
        glk_multiplier(1)


def test_lemma2_examples():
    r = check_lemma2(ElemSet(RingSpec(7), [0]), 1)
    assert (r.lhs, r.rhs, r.status) == (1, Fraction(1, 8), PASS)
    r = check_lemma2(ElemSet(RingSpec(13), [1, 2]), 1)
    # 8A = {8..16} covers 9 residues mod 13, 8A - 8A is all of F_13
    assert (r.lhs, r.rhs, r.status) == (13, Fraction(2, 8), PASS)
    r = check_lemma2(ElemSet(RingSpec(7)), 1)
    assert r.status == PASS


def test_lemma2_integers_drop_the_cap():
    r = check_lemma2(ElemSet(INTEGERS, [0, 1, 5]), 1)
    assert r.rhs == Fraction(3, 8) and r.passed
    r = check_lemma2(ElemSet(INTEGERS, [1, 2, 4]), 2)
    assert r.rhs == Fraction(9, 8) and r.passed


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_lemma2_exhaustive_n1(p):
    ring = RingSpec(p)
    for mask in range(1 << p):
        A = ElemSet(ring, [x for x in range(p) if mask >> x & 1])
        assert check_lemma2(A, 1).status == PASS


def test_glk_inner():
    ring = RingSpec(31)
    assert check_glk_inner(ElemSet(ring, [1, 2, 3, 4]), 2).status == HYPOTHESIS_NOT_MET
    r = check_glk_inner(ElemSet(ring, [1, 5, 9, 17, 30]), 2)
    assert r.rhs == Fraction(3, 8) * 15 and r.status == PASS
    with pytest.raises(ValueError):
        check_glk_inner(ElemSet(ring, [1, 5, 9, 17, 30]), 1)


def test_cor3_examples():
    A = ElemSet(RingSpec(5), [0, 1])
    r = check_cor3(A, 2, dset_naive(A, 2))
    assert r.lhs == 3 and r.status == PASS
    assert r.rhs == pytest.approx(2**0.1 / 8)
    r = check_cor3(ElemSet(RingSpec(7), [3, 4]), 1, 2)
    assert r.rhs == Fraction(1, 8) and r.status == PASS
    assert check_cor3(ElemSet(RingSpec(7)), 2, 0).status == HYPOTHESIS_NOT_MET


def test_cor3_rhs_exact_exponents_and_cap():
    assert cor3_rhs(5, 1, 7) == Fraction(1, 8)
    assert cor3_rhs(5, 1024, 7) == Fraction(5, 8)
    assert cor3_rhs(5, 1024, 3) == Fraction(3, 8)
    assert cor3_rhs(9, 2**20, None) == Fraction(81, 8)
    assert cor3_rhs(4, 8, None) == pytest.approx(4 ** (0.3) / 8)


def test_cor3_slack_is_conservative(monkeypatch):
    # an irrational bound that lands exactly on an integer in floating point is a failure
    import detset.bounds as bounds

    monkeypatch.setattr(bounds, "cor3_rhs", lambda size_A, n, p: 3.0)
    assert check_cor3(ElemSet(INTEGERS, [0, 1, 2]), 3, 3).status == FAIL
    assert check_cor3(ElemSet(INTEGERS, [0, 1, 2]), 3, 4).status == PASS


def test_cor4():
    assert cor4_threshold(0.01) == 9
    r = check_cor4(ElemSet(RingSpec(7), [1, 3]), 0.01, 64)
    assert r.status == PASS
    assert r.witnesses["certified_size"] == 8 and r.witnesses["n_star"] == 9
    r = check_cor4(ElemSet(RingSpec(2), [0, 1]), 0.5, 8)
    assert r.witnesses["certified_size"] == 1
    r = check_cor4(ElemSet(RingSpec(101), [1, 2]), 0.5, 8)
    assert r.status == HYPOTHESIS_NOT_MET
    r = check_cor4(ElemSet(RingSpec(7), [1, 3]), 0.01, 4)
    assert r.status == FAIL


def test_example1():
    r = check_example1(2, 2)
    assert r.witnesses["bound"] == 8 and r.passed
    assert r.witnesses["min"] >= -8 and r.witnesses["max"] <= 8
    for n in (1, 2, 3):
        r = check_example1(1, n)
        assert r.lhs == 1 and r.passed
    r = check_example1(3, 3)
    assert r.witnesses["bound"] == 162 and r.passed and r.lhs == 45


def test_cauchy_davenport_reports():
    ring = RingSpec(7)
    for a, b in combinations(range(1, 1 << 7, 9), 2):
        A = ElemSet(ring, [x for x in range(7) if a >> x & 1])
        B = ElemSet(ring, [x for x in range(7) if b >> x & 1])
        assert check_cauchy_davenport(A, B).status == PASS
    assert check_cauchy_davenport(ElemSet(ring), ElemSet(ring, [1])).status == HYPOTHESIS_NOT_MET
    r = check_cauchy_davenport(ElemSet(INTEGERS, [0, 1, 3]), ElemSet(INTEGERS, [0, 1, 3]))
    assert (r.lhs, r.rhs) == (6, 5)


def test_report_serialization():
    r = check_lemma2(ElemSet(RingSpec(13), [1, 2]), 1)
    d = json.loads(r.to_json())
    assert d["rhs_exact"] == "1/4" and d["rhs"] == 0.25 and d["pass"] is True
    assert d["inputs"] == {"p": 13, "A": [1, 2], "size_A": 2, "n": 1}
    csv_text = reports_to_csv([r])
    assert csv_text.splitlines() == ["name,p,size_A,n,lhs,rhs,pass", "lemma2,13,2,1,13,0.25,True"]
    # recomputable and deterministic
    assert check_lemma2(ElemSet(RingSpec(13), [1, 2]), 1).to_json() == r.to_json()
