"""Ground-truth determinant sets D_n(A) by exhaustive enumeration."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .exceptions import BudgetExceeded, Degenerate
from .matrix import Matrix, det
from .setalg import ElemSet, difference_set, dilate, iter_productset, iter_sumset, sumset

METHODS = ("naive", "cofactor")


@dataclass(frozen=True)
class EnumBudget:
    max_matrices: int = 10**7
    max_seconds: float | None = None
    method: str = "cofactor"

    def __post_init__(self):
        if self.max_matrices <= 0 or (self.max_seconds is not None and self.max_seconds <= 0):
            raise ValueError("budgets must be positive")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")


class _Clock:
    def __init__(self, limit: float | None):
        self.limit = limit
        self.start = time.monotonic()

    def check(self):
        if self.limit is not None and time.monotonic() - self.start > self.limit:
            raise BudgetExceeded(f"wall-clock budget of {self.limit}s exhausted")


def _validate(A: ElemSet, n: int) -> None:
    if n < 1 or not len(A):
        raise Degenerate("need a non-empty set and n >= 1")


def _prefixes(A: ElemSet, n: int, jobs: int) -> list[list[tuple[int, ...]]]:
    """Partition of the first-row value space into at most ``jobs`` chunks."""
    rows = list(product(A.elements, repeat=n))
    jobs = max(1, min(jobs, len(rows)))
    return [rows[i::jobs] for i in range(jobs)]


def _naive_chunk(A: ElemSet, n: int, first_rows, limit):
    ring = A.ring
    clock = _Clock(limit)
    seen = set()
    for count, rest in enumerate(product(A.elements, repeat=n * (n - 1))):
        if count % 4096 == 0:
            clock.check()
        tail = [rest[i * n : (i + 1) * n] for i in range(n - 1)]
        for first in first_rows:
            seen.add(det(Matrix(ring, (first, *tail))))
    return seen


def _cofactor_vectors(A: ElemSet, n: int, top_rows, limit) -> set[tuple[int, ...]]:
    """Distinct last-row cofactor vectors over the given top-row prefixes."""
    ring = A.ring
    clock = _Clock(limit)
    vectors = set()
    for count, rest in enumerate(product(A.elements, repeat=n * (n - 2))):
        if count % 4096 == 0:
            clock.check()
        middle = [rest[i * n : (i + 1) * n] for i in range(n - 2)]
        for first in top_rows:
            top = (first, *middle)
            vec = []
            for j in range(n):
                minor = tuple(r[:j] + r[j + 1 :] for r in top)
                sign = -1 if (n - 1 + j) % 2 else 1
                vec.append(ring.canon(sign * det(Matrix(ring, minor))))
            vectors.add(tuple(vec))
    return vectors


def _run(fn, A: ElemSet, n: int, budget: EnumBudget, jobs: int):
    chunks = _prefixes(A, n, jobs)
    if len(chunks) == 1:
        return [fn(A, n, chunks[0], budget.max_seconds)]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        futures = [pool.submit(fn, A, n, c, budget.max_seconds) for c in chunks]
        return [f.result() for f in futures]


def dset_naive(A: ElemSet, n: int, budget: EnumBudget = EnumBudget(), jobs: int = 1) -> ElemSet:
    """{det(M) : M in A^{n x n}} by full enumeration."""
    _validate(A, n)
    count = len(A) ** (n * n)
    if count > budget.max_matrices:
        raise BudgetExceeded(f"|A|^(n^2) = {count} matrices exceeds budget {budget.max_matrices}")
    parts = _run(_naive_chunk, A, n, budget, jobs)
    return ElemSet(A.ring, set().union(*parts))


def dset_cofactor(A: ElemSet, n: int, budget: EnumBudget = EnumBudget(), jobs: int = 1) -> ElemSet:
    """D_n(A) from the top (n-1) x n submatrices.

    With last-row cofactors (c_1, ..., c_n) the determinants completing a
    given top block are exactly c_1*A + ... + c_n*A.
    """
    _validate(A, n)
    if n == 1:
        return A
    count = len(A) ** (n * (n - 1))
    if count > budget.max_matrices:
        raise BudgetExceeded(f"|A|^(n(n-1)) = {count} submatrices exceeds budget {budget.max_matrices}")
    parts = _run(_cofactor_vectors, A, n, budget, jobs)
    vectors = sorted(set().union(*parts))
    clock = _Clock(budget.max_seconds)
    result = ElemSet(A.ring)
    for vec in vectors:
        clock.check()
        acc = dilate(vec[0], A)
        for c in vec[1:]:
            acc = sumset(acc, dilate(c, A))
        result = result | acc
    return result


def dset(A: ElemSet, n: int, budget: EnumBudget = EnumBudget(), jobs: int = 1) -> ElemSet:
    fn = dset_naive if budget.method == "naive" else dset_cofactor
    return fn(A, n, budget, jobs)


def lower_bound_shapes(size: int) -> list[tuple[int, int]]:
    """(m, k) with 2(m(k-1)+1) == size, where k = 1 only with m = 1."""
    if size < 2 or size % 2:
        return []
    inner = size // 2
    if inner == 1:
        return [(1, 1)]
    return [((inner - 1) // (k - 1), k) for k in range(2, inner + 1) if (inner - 1) % (k - 1) == 0]


def dset_lower_bound_constructive(A: ElemSet, n: int) -> ElemSet:
    """A certified subset of D_n(A) for even n, built without enumeration.

    For every split n = 2(m(k-1)+1) the block-doubled gadget realizes
    det(M0) * (-1)^(k+1) * a0^(m(k-1)+1-k) * m(A-A)^k, a dilate of m(A-A)^k
    (same cardinality); the union over splits is returned.
    """
    from .gadgets import build_m0, default_pivot_pair

    _validate(A, n)
    ring = A.ring
    shapes = lower_bound_shapes(n)
    if not shapes:
        raise Degenerate(f"matrix size {n} is not of the form 2(m(k-1)+1)")
    D = difference_set(A)
    if len(A) == 1:
        # all-equal matrix of size >= 2 is singular
        return ElemSet(ring, [0])
    a0 = min(x for x in D.elements if x > 0)
    a, b = default_pivot_pair(A)
    result = ElemSet(ring)
    for m, k in shapes:
        inner = m * (k - 1) + 1
        d0 = det(build_m0(a, b, inner, ring))
        factor = d0 * (-1) ** (k + 1) * a0 ** (inner - k)
        result = result | dilate(factor, iter_sumset(m, iter_productset(k, D)))
    return result
