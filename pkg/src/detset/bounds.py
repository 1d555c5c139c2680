"""Checkers for the growth inequalities on sum/product sets and D_n(A).

Every checker returns a :class:`BoundReport` holding the computed left-hand
side, the claimed bound and whether it held. Rational bounds are compared
exactly with :class:`fractions.Fraction`; the one irrational exponent
(``|A|^(0.1 log2 n)``) is compared in floating point with a slack that can
only turn a pass into a fail.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .enumerate import EnumBudget, dset
from .exceptions import Insufficient
from .gadgets import coverage_certificate
from .ring import INTEGERS
from .setalg import ElemSet, iter_productset, iter_sumset, negate, sumset

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"

FLOAT_SLACK = 1e-9
COR3_CONSTANT = Fraction(1, 10)


@dataclass
class BoundReport:
    name: str
    inputs: dict[str, Any]
    lhs: int | None
    rhs: Fraction | float | None
    status: str
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        rhs = self.rhs
        return {
            "name": self.name,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": None if rhs is None else float(rhs),
            "rhs_exact": str(rhs) if isinstance(rhs, (Fraction, int)) else None,
            "status": self.status,
            "pass": self.passed,
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


CSV_FIELDS = ("name", "p", "size_A", "n", "lhs", "rhs", "pass")


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        d = r.to_dict()
        w.writerow([r.name, r.inputs.get("p"), r.inputs.get("size_A"), r.inputs.get("n"), d["lhs"], d["rhs"], d["pass"]])
    return buf.getvalue()


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _set_inputs(A: ElemSet, **extra) -> dict[str, Any]:
    return {"p": A.ring.p, "A": list(A.elements), "size_A": len(A), **extra}


def glk_multiplier(n: int) -> int:
    """(5/24) 4^n - 1/3, rejected unless it is a non-negative integer."""
    value = Fraction(5, 24) * 4**n - Fraction(1, 3)
    if value.denominator != 1 or value < 0:
        raise ValueError(f"(5/24)4^{n} - 1/3 = {value} is not a non-negative integer")
    return int(value)


def difference_of_iterated(A: ElemSet, copies: int, n: int) -> ElemSet:
    """copies * A^n - copies * A^n."""
    U = iter_sumset(copies, iter_productset(n, A))
    return sumset(U, negate(U))


def check_lemma2(A: ElemSet, n: int) -> BoundReport:
    """|8^n A^n - 8^n A^n| >= (1/8) min(|A|^n, p); over Z the min is dropped."""
    inputs = _set_inputs(A, n=n)
    if not len(A):
        return BoundReport("lemma2", inputs, 0, Fraction(0), PASS)
    S = difference_of_iterated(A, 8**n, n)
    cap = len(A) ** n if A.ring.p is None else min(len(A) ** n, A.ring.p)
    rhs = Fraction(cap, 8)
    return BoundReport("lemma2", inputs, len(S), rhs, _status(len(S) >= rhs))


def check_glk_inner(A: ElemSet, n: int) -> BoundReport:
    """|N_n A^n - N_n A^n| >= (3/8) min(|A|^n, (p-1)/2) for |A| >= 5."""
    Nn = glk_multiplier(n)
    inputs = _set_inputs(A, n=n, N_n=Nn)
    if A.ring.p is None:
        raise ValueError("this inequality is stated over F_p")
    if len(A) < 5:
        return BoundReport("glk_inner", inputs, None, None, HYPOTHESIS_NOT_MET)
    S = difference_of_iterated(A, Nn, n)
    rhs = Fraction(3, 8) * min(Fraction(len(A) ** n), Fraction(A.ring.p - 1, 2))
    return BoundReport("glk_inner", inputs, len(S), rhs, _status(len(S) >= rhs))


def cor3_rhs(size_A: int, n: int, p: int | None) -> Fraction | float:
    """(1/8) min(|A|^(0.1 log2 n), p), exact whenever the exponent is an integer."""
    if n & (n - 1) == 0 and (n.bit_length() - 1) % 10 == 0:
        power: Fraction | float = Fraction(size_A) ** ((n.bit_length() - 1) // 10)
    else:
        power = size_A ** (float(COR3_CONSTANT) * math.log2(n))
    if p is not None:
        power = min(power, p)
    return Fraction(power) / 8 if isinstance(power, (int, Fraction)) else power / 8


def check_cor3(A: ElemSet, n: int, observed: ElemSet | int) -> BoundReport:
    """|D_n(A)| >= (1/8) min(|A|^(0.1 log2 n), p) for an observed D_n(A) or subset of it."""
    lhs = observed if isinstance(observed, int) else len(observed)
    inputs = _set_inputs(A, n=n)
    if not len(A):
        return BoundReport("cor3", inputs, lhs, None, HYPOTHESIS_NOT_MET)
    rhs = cor3_rhs(len(A), n, A.ring.p)
    ok = lhs >= rhs if isinstance(rhs, Fraction) else lhs >= rhs + FLOAT_SLACK
    return BoundReport("cor3", inputs, lhs, rhs, _status(ok))


def cor4_threshold(delta: float) -> int:
    return math.ceil(8 * math.exp(10 * delta))


def check_cor4(A: ElemSet, delta: float, budget: int = 64) -> BoundReport:
    """Constructive check that D_k(A) = F_p for some certified k.

    Hypothesis |A| >= p^delta is tested first; the certified k is reported
    next to n* = ceil(8 e^(10 delta)).
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    p = A.ring.p
    if p is None:
        raise ValueError("this statement is over F_p")
    n_star = cor4_threshold(delta)
    inputs = _set_inputs(A, delta=delta, budget=budget, n_star=n_star)
    if len(A) < p**delta:
        return BoundReport("cor4", inputs, None, None, HYPOTHESIS_NOT_MET)
    if len(A) < 2:
        # p^delta > 1, so |A| = 1 cannot meet the hypothesis for p >= 2
        return BoundReport("cor4", inputs, None, None, HYPOTHESIS_NOT_MET)
    try:
        cert = coverage_certificate(A, budget)
    except Insufficient:
        return BoundReport("cor4", inputs, None, Fraction(p), FAIL, {"certified_size": None})
    inputs["n"] = cert.size
    return BoundReport(
        "cor4",
        inputs,
        p,
        Fraction(p),
        PASS,
        {"certified_size": cert.size, "certificate": cert.to_json(), "n_star": n_star},
    )


def check_example1(m: int, n: int, budget: EnumBudget = EnumBudget()) -> BoundReport:
    """Every determinant of an n x n matrix over {1..m} lies in [-n! m^n, n! m^n]."""
    A = ElemSet(INTEGERS, range(1, m + 1))
    D = dset(A, n, budget)
    bound = math.factorial(n) * m**n
    inside = all(-bound <= d <= bound for d in D)
    ok = inside and len(D) <= 2 * bound + 1
    inputs = _set_inputs(A, m=m, n=n)
    return BoundReport(
        "example1",
        inputs,
        len(D),
        Fraction(2 * bound + 1),
        _status(ok),
        {"bound": bound, "min": min(D.elements), "max": max(D.elements)},
    )


def check_cauchy_davenport(A: ElemSet, B: ElemSet) -> BoundReport:
    """|A + B| >= min(p, |A| + |B| - 1) for non-empty A, B."""
    inputs = {"p": A.ring.p, "A": list(A.elements), "B": list(B.elements), "size_A": len(A), "size_B": len(B)}
    if not len(A) or not len(B):
        return BoundReport("cauchy_davenport", inputs, None, None, HYPOTHESIS_NOT_MET)
    lhs = len(sumset(A, B))
    rhs = len(A) + len(B) - 1
    if A.ring.p is not None:
        rhs = min(A.ring.p, rhs)
    return BoundReport("cauchy_davenport", inputs, lhs, Fraction(rhs), _status(lhs >= rhs))
