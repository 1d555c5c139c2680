"""Matrix gadgets whose determinants are prescribed sums of products.

The central construction places, for each row ``a_i = (a_{i,1}, ..., a_{i,n})``
of an assignment, an (n-1)x(n-1) unit upper-bidiagonal block on the diagonal,
``a_{i,n}`` in the first row above the block and ``a_{i,1}`` in the first
column beside the block's last row. The only non-vanishing permutations are
the n-cycles threading one such row through the shared corner, so

    det = (-1)^(n+1) * sum_i prod_j a_{i,j}.

A block-doubling step ``[[M0, M1], [M0, M2]]`` then turns matrices over
``A - A`` into matrices over ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .exceptions import (
    BadPivotPair,
    Insufficient,
    MissingZeroOne,
    NotAMember,
    ShapeMismatch,
)
from .matrix import Matrix, block2x2, det
from .ring import INTEGERS, RingSpec
from .setalg import (
    ElemSet,
    difference_set,
    iter_productset,
    iter_sumset,
    normalize_symmetric,
    traced_iter_productset,
    traced_iter_sumset,
)


@dataclass(frozen=True)
class Assignment:
    """An m x n array of ring elements ``a[i][j]`` (0-based here)."""

    a: tuple[tuple[int, ...], ...]
    ring: RingSpec = INTEGERS

    def __post_init__(self):
        rows = tuple(tuple(self.ring.canon(x) for x in r) for r in self.a)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("assignment must be a non-empty rectangular array")
        object.__setattr__(self, "a", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], ring: RingSpec = INTEGERS) -> Assignment:
        return cls(tuple(tuple(r) for r in rows), ring)

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.a[0])

    def sum_of_products(self) -> int:
        total = 0
        for row in self.a:
            prod = 1
            for x in row:
                prod *= x
            total += prod
        return self.ring.canon(total)


@dataclass(frozen=True)
class GadgetWitness:
    """A matrix together with its certified determinant.

    Construction re-computes ``det(matrix)`` and refuses to exist if it does
    not equal ``value``, or if an entry falls outside ``allowed``.
    """

    matrix: Matrix
    value: int
    assignment: Assignment | None = None
    scale: int = 1
    allowed: ElemSet | None = field(default=None, compare=False)

    def __post_init__(self):
        ring = self.matrix.ring
        object.__setattr__(self, "value", ring.canon(self.value))
        object.__setattr__(self, "scale", ring.canon(self.scale))
        got = det(self.matrix)
        if got != self.value:
            raise AssertionError(f"witness determinant {got} != claimed value {self.value}")
        if self.allowed is not None:
            stray = {x for x in self.matrix.values() if x not in self.allowed}
            if stray:
                raise AssertionError(f"entries {sorted(stray)} are outside the allowed set")

    @property
    def size(self) -> int:
        return self.matrix.rows

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "value": self.value,
            "scale": self.scale,
            "matrix": self.matrix.to_json(),
            "assignment": None if self.assignment is None else [list(r) for r in self.assignment.a],
        }


def build_m0(a: int, b: int, n: int, ring: RingSpec = INTEGERS) -> Matrix:
    """First row all ``b``, diagonal ``b``, everything else ``a``.

    det = b * (b - a)^(n-1), nonzero when b != 0 and a != b.
    """
    a, b = ring.canon(a), ring.canon(b)
    if b == 0 or a == b:
        raise BadPivotPair(f"need b != 0 and a != b, got a={a}, b={b}")
    rows = [[b] * n]
    for i in range(1, n):
        rows.append([b if j == i else a for j in range(n)])
    M = Matrix.from_rows(rows, ring)
    expected = ring.canon(b * (b - a) ** (n - 1))
    assert det(M) == expected
    return M


def block_double(M0: Matrix, M1: Matrix, M2: Matrix, allowed: ElemSet | None = None) -> GadgetWitness:
    """The 2n x 2n matrix [[M0, M1], [M0, M2]], with value det(M0) * det(M2 - M1)."""
    d0 = det(M0)
    if d0 == 0:
        raise BadPivotPair("M0 must be non-singular")
    big = block2x2(M0, M1, M0, M2)
    return GadgetWitness(big, M0.ring.canon(d0 * det(M2 - M1)), scale=d0, allowed=allowed)


def build_bidiagonal(ai: Sequence[int], n: int, ring: RingSpec = INTEGERS, unit: int = 1) -> Matrix:
    """(n-1)x(n-1) block: ``unit`` on the diagonal, a_{i,n-1}, ..., a_{i,2} above it."""
    if n < 2:
        raise ShapeMismatch("the bidiagonal block needs n >= 2")
    if len(ai) != n:
        raise ShapeMismatch(f"row has {len(ai)} entries, expected {n}")
    k = n - 1
    rows = [[0] * k for _ in range(k)]
    for r in range(k):
        rows[r][r] = unit
        if r + 1 < k:
            # 1-based a_{i, n-1-r}
            rows[r][r + 1] = ai[n - 2 - r]
    return Matrix.from_rows(rows, ring)


def _expand_parts(parts: Sequence[Assignment], unit: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """Flatten parts into (n, sign, row) triples with every n >= 2."""
    out = []
    for part in parts:
        for row in part.a:
            if part.n == 1:
                if unit != 1:
                    raise ShapeMismatch("single-factor rows need unit diagonal")
                out.append((2, -1, (row[0], 1)))
            else:
                out.append((part.n, (-1) ** (part.n + 1), row))
    return out


def _assemble(ring: RingSpec, rows: list[tuple[int, int, tuple[int, ...]]], unit: int) -> Matrix:
    size = 1 + sum(n - 1 for n, _, _ in rows)
    grid = [[0] * size for _ in range(size)]
    offset = 1
    for n, _, a in rows:
        block = build_bidiagonal(a, n, ring, unit)
        for r in range(n - 1):
            grid[offset + r][offset : offset + n - 1] = block.entries[r]
        grid[0][offset] = a[n - 1]
        grid[offset + n - 2][0] = a[0]
        offset += n - 1
    return Matrix.from_rows(grid, ring)


def build_gadget(asg: Assignment, unit: int = 1) -> GadgetWitness:
    """Matrix of size m(n-1)+1 with determinant (-1)^(n+1) * unit^(size-n) * sum_i prod_j a_{i,j}.

    ``n == 1`` with ``m == 1`` is the 1x1 matrix [a]. For ``n == 1`` and
    ``m > 1`` the sum is realized by the n=2 gadget with second factors 1 and
    its first two rows swapped (size m+1), so the sign convention still holds.
    """
    ring = asg.ring
    m, n = asg.m, asg.n
    if n == 1 and m == 1:
        return GadgetWitness(Matrix.from_rows([[asg.a[0][0]]], ring), asg.a[0][0], asg)
    if n == 1:
        if unit != 1:
            raise ShapeMismatch("single-factor rows need unit diagonal")
        M = _assemble(ring, [(2, -1, (row[0], 1)) for row in asg.a], 1)
        swapped = (M.entries[1], M.entries[0]) + M.entries[2:]
        return GadgetWitness(Matrix(ring, swapped), asg.sum_of_products(), asg)
    M = _assemble(ring, [(n, 1, row) for row in asg.a], unit)
    size = m * (n - 1) + 1
    value = (-1) ** (n + 1) * unit ** (size - n) * asg.sum_of_products()
    return GadgetWitness(M, value, asg)


def build_combined(parts: Sequence[Assignment], unit: int = 1) -> GadgetWitness:
    """One matrix sharing the corner row/column across several assignments.

    Size is sum_i m_i(n_i - 1) + 1 and the value is
    sum over parts of (-1)^(n_i+1) * sum_rows prod. Parts with n_i = 1 enter
    as n = 2 rows with second factor 1, hence with sign -1.
    """
    if not parts:
        raise ShapeMismatch("need at least one part")
    if len(parts) == 1:
        return build_gadget(parts[0], unit)
    ring = parts[0].ring
    if any(p.ring != ring for p in parts):
        raise ShapeMismatch("parts live in different rings")
    rows = _expand_parts(parts, unit)
    M = _assemble(ring, rows, unit)
    size = M.rows
    value = 0
    for n, sign, a in rows:
        prod = 1
        for x in a:
            prod *= x
        value += sign * unit ** (size - n) * prod
    return GadgetWitness(M, value)


# --- witness synthesis ---------------------------------------------------------


@lru_cache(maxsize=128)
def _sum_product_trace(A: ElemSet, m: int, n: int):
    products = traced_iter_productset(n, A)
    sums = traced_iter_sumset(m, products.elements)
    return products, sums


def realizable(A: ElemSet, m: int, n: int) -> ElemSet:
    """Values reachable by :func:`synthesize_witness`: (-1)^(n+1) * m A^n."""
    sign = (-1) ** (n + 1)
    mAn = iter_sumset(m, iter_productset(n, A))
    return mAn if sign == 1 else ElemSet(A.ring, (-x for x in mAn))


def _decode(A: ElemSet, m: int, n: int, s: int) -> Assignment:
    products, sums = _sum_product_trace(A, m, n)
    if s not in sums:
        raise NotAMember(f"{s} is not in {m}A^{n}")
    rows = [products.decompose(t) for t in sums.decompose(s)]
    return Assignment.of(rows, A.ring)


def synthesize_witness(A: ElemSet, m: int, n: int, target: int) -> GadgetWitness:
    """A gadget matrix with entries in A and determinant ``target``.

    Requires {0, 1} <= A. ``target`` is realizable iff (-1)^(n+1) * target is
    in m A^n.
    """
    if 0 not in A or 1 not in A:
        raise MissingZeroOne("the gadget needs 0 and 1 among the allowed entries")
    ring = A.ring
    asg = _decode(A, m, n, ring.canon((-1) ** (n + 1) * target))
    w = build_gadget(asg)
    return GadgetWitness(w.matrix, target, asg, allowed=A)


# --- lifting from A - A to A ---------------------------------------------------


def default_pivot_pair(A: ElemSet) -> tuple[int, int]:
    """(a, b) for :func:`build_m0`: b the least nonzero element, a the least other one."""
    b = next(x for x in A.elements if x != 0)
    a = next(x for x in A.elements if x != b)
    return a, b


def lift_difference_matrix(A: ElemSet, G: Matrix, pivot: tuple[int, int] | None = None) -> GadgetWitness:
    """Realize det(M0) * det(G) by a matrix over A, for G with entries in A - A."""
    ring = A.ring
    split: dict[int, tuple[int, int]] = {}
    for x in A.elements:
        for y in A.elements:
            split.setdefault(ring.sub(x, y), (x, y))
    try:
        pairs = [[split[e] for e in row] for row in G.entries]
    except KeyError as exc:
        raise NotAMember(f"entry {exc.args[0]} is not in A - A") from None
    M2 = Matrix.from_rows([[x for x, _ in row] for row in pairs], ring)
    M1 = Matrix.from_rows([[y for _, y in row] for row in pairs], ring)
    a, b = pivot or default_pivot_pair(A)
    M0 = build_m0(a, b, G.rows, ring)
    return block_double(M0, M1, M2, allowed=A)


def doubled_witness(A: ElemSet, m: int, n: int, s: int) -> GadgetWitness:
    """Size 2(m(n-1)+1) witness over A for an element ``s`` of m(A-A)^n.

    The inner gadget lives over A - A with diagonal ``a0`` (least positive
    element of A - A), so its value is (-1)^(n+1) a0^(k-n) s; block doubling
    multiplies by det(M0). The witness value is that product.
    """
    D = difference_set(A)
    a0 = min(x for x in D.elements if x > 0)
    asg = _decode(D, m, n, s)
    inner = build_gadget(asg, unit=a0)
    lifted = lift_difference_matrix(A, inner.matrix)
    return GadgetWitness(lifted.matrix, lifted.value, asg, lifted.scale, allowed=A)


# --- coverage ------------------------------------------------------------------


@dataclass
class CoverageCertificate:
    """Proof that D_size(A) is all of F_p, with a witness for every element.

    ``route`` is ``"direct"`` (gadget over A itself, needs {0,1} <= A) or
    ``"doubled"`` (gadget over A' = a0^{-1}(A - A), lifted by block doubling).
    """

    A: ElemSet
    route: str
    m: int
    n: int
    size: int
    inner_set: ElemSet
    a0: int = 1
    det_m0: int = 1
    pivot: tuple[int, int] | None = None

    @property
    def inner_size(self) -> int:
        return self.size if self.route == "direct" else self.size // 2

    @property
    def scale(self) -> int:
        ring = self.A.ring
        return ring.mul(self.det_m0, ring.power(self.a0, self.inner_size))

    def witness(self, t: int) -> GadgetWitness:
        ring = self.A.ring
        if self.route == "direct":
            return synthesize_witness(self.A, self.m, self.n, t)
        d = ring.mul(t, ring.inv(self.scale))
        inner = synthesize_witness(self.inner_set, self.m, self.n, d)
        lifted = lift_difference_matrix(self.A, inner.matrix.scale(self.a0), self.pivot)
        return GadgetWitness(lifted.matrix, t, inner.assignment, self.scale, allowed=self.A)

    def witnesses(self) -> Iterator[GadgetWitness]:
        for t in range(self.A.ring.p):
            yield self.witness(t)

    def to_json(self) -> dict:
        return {
            "p": self.A.ring.p,
            "set": list(self.A.elements),
            "route": self.route,
            "m": self.m,
            "n": self.n,
            "size": self.size,
            "a0": self.a0,
            "a0_power": self.A.ring.power(self.a0, self.inner_size),
            "det_m0": self.det_m0,
            "scale": self.scale,
        }


def _shapes(k: int) -> Iterator[tuple[int, int]]:
    """(m, n) pairs with m(n-1)+1 == k, in increasing n."""
    if k == 1:
        yield 1, 1
        return
    for n in range(2, k + 1):
        if (k - 1) % (n - 1) == 0:
            yield (k - 1) // (n - 1), n


def coverage_certificate(A: ElemSet, budget: int) -> CoverageCertificate:
    """Smallest matrix size <= ``budget`` at which a construction covers F_p.

    Candidates are ordered by matrix size, then by n, direct route first.
    """
    ring = A.ring
    if ring.p is None:
        raise ValueError("coverage is only defined over a prime field")
    if len(A) < 2:
        raise ValueError("coverage needs |A| >= 2")
    A_prime, a0 = normalize_symmetric(A)
    direct_ok = 0 in A and 1 in A
    pivot = default_pivot_pair(A)
    products: dict[tuple[str, int], ElemSet] = {}

    def covers(S: ElemSet, tag: str, m: int, n: int) -> bool:
        key = (tag, n)
        if key not in products:
            products[key] = iter_productset(n, S)
        return iter_sumset(m, products[key]).is_full()

    for size in range(1, budget + 1):
        if direct_ok:
            for m, n in _shapes(size):
                if covers(A, "direct", m, n):
                    return CoverageCertificate(A, "direct", m, n, size, A)
        if size % 2 == 0:
            k = size // 2
            for m, n in _shapes(k):
                if covers(A_prime, "doubled", m, n):
                    M0 = build_m0(pivot[0], pivot[1], k, ring)
                    return CoverageCertificate(A, "doubled", m, n, size, A_prime, a0, det(M0), pivot)
    raise Insufficient(budget)
