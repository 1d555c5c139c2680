"""Named verification suites run by ``detset verify``.

Each suite is a pure function of a seed and returns a list of reports. The
random stream of a suite depends only on ``(seed, suite name)``, so suites
can run in any order or in parallel without changing their output.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable

from .bounds import (
    FAIL,
    PASS,
    BoundReport,
    check_cauchy_davenport,
    check_cor3,
    check_cor4,
    check_example1,
    check_glk_inner,
    check_lemma2,
)
from .enumerate import EnumBudget, dset_cofactor, dset_naive
from .gadgets import Assignment, build_gadget, build_m0, block_double
from .matrix import Matrix, det, permanent
from .ring import INTEGERS, RingSpec
from .setalg import ElemSet, iter_sumset, sumset

PRIMES = (2, 3, 5, 7, 101)

DEFAULT_SEED = 20170118


def all_subsets(ring: RingSpec, universe, min_size: int = 0, max_size: int | None = None):
    universe = list(universe)
    top = len(universe) if max_size is None else max_size
    for k in range(min_size, top + 1):
        for combo in combinations(universe, k):
            yield ElemSet(ring, combo)


def tally(name: str, inputs: dict, reports: list[BoundReport]) -> BoundReport:
    """Fold many reports into one: lhs = number passing, rhs = number checked."""
    failures = [r.to_dict() for r in reports if not r.passed]
    ok = len(reports) - len(failures)
    return BoundReport(name, inputs, ok, len(reports), PASS if not failures else FAIL, {"failures": failures[:5]})


def identity_report(name: str, inputs: dict, trials: int, mismatches: list) -> BoundReport:
    return BoundReport(
        name,
        {**inputs, "trials": trials},
        trials - len(mismatches),
        trials,
        PASS if not mismatches else FAIL,
        {"mismatches": mismatches[:5]},
    )


def random_ring(rng: random.Random) -> RingSpec:
    choice = rng.choice(PRIMES + (None,))
    return INTEGERS if choice is None else RingSpec(choice)


def random_entry(rng: random.Random, ring: RingSpec) -> int:
    return rng.randint(-9, 9) if ring.p is None else rng.randrange(ring.p)


def random_matrix(rng: random.Random, ring: RingSpec, n: int) -> Matrix:
    return Matrix.from_rows([[random_entry(rng, ring) for _ in range(n)] for _ in range(n)], ring)


def random_assignment(rng: random.Random, ring: RingSpec, m: int, n: int) -> Assignment:
    return Assignment.of([[random_entry(rng, ring) for _ in range(n)] for _ in range(m)], ring)


# --- suites ----------------------------------------------------------------------


def suite_lemma1(rng: random.Random, trials: int = 300) -> list[BoundReport]:
    mismatches = []
    for _ in range(trials):
        ring = random_ring(rng)
        n = rng.randint(1, 4)
        while True:
            M0 = random_matrix(rng, ring, n)
            if det(M0):
                break
        M1, M2 = random_matrix(rng, ring, n), random_matrix(rng, ring, n)
        w = block_double(M0, M1, M2)
        expected = ring.canon(det(M0) * det(M2 - M1))
        if w.value != expected:
            mismatches.append({"p": ring.p, "n": n})
    out = [identity_report("lemma1_block_identity", {"n_max": 4}, trials, mismatches)]

    F7 = RingSpec(7)
    bad = []
    count = 0
    for n in range(1, 6):
        for a in range(7):
            for b in range(1, 7):
                if a == b:
                    continue
                count += 1
                if det(build_m0(a, b, n, F7)) != F7.canon(b * (b - a) ** (n - 1)):
                    bad.append({"a": a, "b": b, "n": n})
    out.append(identity_report("lemma1_m0_determinant", {"p": 7, "n_max": 5}, count, bad))
    return out


def suite_theorem1(rng: random.Random, trials: int = 1000) -> list[BoundReport]:
    mismatches = []
    for _ in range(trials):
        ring = random_ring(rng)
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        asg = random_assignment(rng, ring, m, n)
        w = build_gadget(asg)
        if det(w.matrix) != ring.canon((-1) ** (n + 1) * asg.sum_of_products()):
            mismatches.append({"p": ring.p, "m": m, "n": n})
        if m >= 2 and n >= 2 and w.size != m * (n - 1) + 1:
            mismatches.append({"p": ring.p, "m": m, "n": n, "size": w.size})
    return [identity_report("theorem1_gadget_identity", {"m_max": 6, "n_max": 6}, trials, mismatches)]


def suite_lemma2(rng: random.Random, spot_checks: int = 20) -> list[BoundReport]:
    out = []
    for p in (2, 3, 5, 7, 11, 13):
        ring = RingSpec(p)
        reports = [check_lemma2(A, 1) for A in all_subsets(ring, range(p))]
        out.append(tally("lemma2_sweep", {"p": p, "n": 1}, reports))

    # 8A contains a translate of 4A, hence |8A - 8A| >= |4A - 4A|
    bad = []
    total = 0
    for p in (5, 7):
        ring = RingSpec(p)
        for A in all_subsets(ring, range(p), 1):
            total += 1
            four = iter_sumset(4, A)
            eight = iter_sumset(8, A)
            a = A.elements[0]
            if not sumset(four, ElemSet(ring, [4 * a])) <= eight:
                bad.append({"p": p, "A": list(A.elements)})
    out.append(identity_report("lemma2_translate_containment", {"n": 1}, total, bad))

    ring = RingSpec(31)
    reports = []
    glk = []
    for _ in range(spot_checks):
        size = rng.randint(1, 8)
        A = ElemSet(ring, rng.sample(range(31), size))
        reports.append(check_lemma2(A, 2))
        if size >= 5:
            glk.append(check_glk_inner(A, 2))
    out.append(tally("lemma2_spot", {"p": 31, "n": 2}, reports))
    out.append(tally("glk_inner_spot", {"p": 31, "n": 2}, glk))
    return out


def cor3_instances():
    """(A, n, D_n(A)) for the small instances that are enumerated exactly."""
    F5, F7 = RingSpec(5), RingSpec(7)
    for A in all_subsets(F5, range(5), 1, 3):
        for n in (2, 3):
            yield A, n, dset_cofactor(A, n)
    for A in all_subsets(INTEGERS, range(-2, 3), 1, 3):
        yield A, 2, dset_naive(A, 2)
    for A in all_subsets(F7, range(7), 1, 3):
        yield A, 2, dset_naive(A, 2)


def suite_cor3(rng: random.Random) -> list[BoundReport]:
    reports = [check_cor3(A, n, D) for A, n, D in cor3_instances()]
    return [tally("cor3_enumerated", {}, reports)]


def suite_cor4(rng: random.Random) -> list[BoundReport]:
    out = [check_cor4(ElemSet(RingSpec(7), [1, 3]), 0.01, 64)]
    out.append(check_cor4(ElemSet(RingSpec(2), [0, 1]), 0.5, 8))
    out.append(check_cor4(ElemSet(RingSpec(5), [0, 1]), 0.3, 64))
    return out


def suite_example1(rng: random.Random) -> list[BoundReport]:
    return [check_example1(m, n, EnumBudget(method="cofactor")) for m in (1, 2, 3) for n in (2, 3)]


def suite_permanent(rng: random.Random, trials: int = 300) -> list[BoundReport]:
    shapes = [(m, n) for m in range(1, 13) for n in range(2, 14) if m * (n - 1) + 1 <= 13]
    mismatches = []
    ratios: dict[tuple[int | None, int, int], set[int]] = {}
    for _ in range(trials):
        ring = random_ring(rng)
        m, n = rng.choice(shapes)
        w = build_gadget(random_assignment(rng, ring, m, n))
        d, per = ring.signed(w.value), ring.signed(permanent(w.matrix))
        if abs(d) != abs(per):
            mismatches.append({"p": ring.p, "m": m, "n": n})
        elif d:
            ratios.setdefault((ring.p, m, n), set()).add(per // d if ring.p is None else ring.canon(per * ring.inv(d)))
    varying = [{"p": k[0], "m": k[1], "n": k[2]} for k, v in sorted(ratios.items(), key=str) if len(v) > 1]
    return [
        identity_report("permanent_abs_equals_det", {"size_max": 13}, trials, mismatches),
        identity_report("permanent_sign_constant", {"size_max": 13}, len(ratios), varying),
    ]


def suite_cd(rng: random.Random) -> list[BoundReport]:
    out = []
    for p in (2, 3, 5, 7):
        ring = RingSpec(p)
        subsets = list(all_subsets(ring, range(p), 1))
        reports = [check_cauchy_davenport(A, B) for A in subsets for B in subsets]
        out.append(tally("cauchy_davenport_sweep", {"p": p}, reports))
    return out


SUITES: dict[str, Callable[[random.Random], list[BoundReport]]] = {
    "lemma1": suite_lemma1,
    "theorem1": suite_theorem1,
    "lemma2": suite_lemma2,
    "cor3": suite_cor3,
    "cor4": suite_cor4,
    "example1": suite_example1,
    "permanent": suite_permanent,
    "cd": suite_cd,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[BoundReport]:
    rng = random.Random(f"{seed}:{name}")
    return SUITES[name](rng)
