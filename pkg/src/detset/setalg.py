"""Finite subsets of a ring and the sum/product set operations on them.

Over F_p with p <= 2**20 a set is held as a dense bitset (one Python int,
bit ``i`` set iff ``i`` is in the set); sums then reduce to OR-ing cyclic
rotations. Everywhere else a set is a sorted, duplicate-free tuple.
"""

from __future__ import annotations

import warnings
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .exceptions import RingMismatch, SetTooSmall
from .ring import RingSpec

DENSE_LIMIT = 2**20


def _dense(ring: RingSpec) -> bool:
    return ring.p is not None and ring.p <= DENSE_LIMIT


def _bits_to_tuple(bits: int) -> tuple[int, ...]:
    s = bin(bits)[:1:-1]
    out = []
    i = s.find("1")
    while i != -1:
        out.append(i)
        i = s.find("1", i + 1)
    return tuple(out)


def _rotate(bits: int, shift: int, p: int, mask: int) -> int:
    if shift == 0:
        return bits
    return ((bits << shift) | (bits >> (p - shift))) & mask


class ElemSet:
    """Immutable finite subset of ``ring`` with canonical elements."""

    __slots__ = ("ring", "_bits", "_items", "_hash")

    def __init__(self, ring: RingSpec, values: Iterable[int] = ()):
        self.ring = ring
        self._hash = None
        if _dense(ring):
            bits = 0
            for v in values:
                bits |= 1 << ring.canon(v)
            self._bits = bits
            self._items = None
        else:
            self._bits = None
            self._items = tuple(sorted({ring.canon(v) for v in values}))

    @classmethod
    def _from_bits(cls, ring: RingSpec, bits: int) -> ElemSet:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._bits = bits
        obj._items = None
        obj._hash = None
        return obj

    @classmethod
    def full(cls, ring: RingSpec) -> ElemSet:
        if ring.p is None:
            raise ValueError("the integer ring has no finite full set")
        if _dense(ring):
            return cls._from_bits(ring, (1 << ring.p) - 1)
        return cls(ring, range(ring.p))

    @property
    def elements(self) -> tuple[int, ...]:
        """Sorted canonical elements."""
        if self._items is None:
            self._items = _bits_to_tuple(self._bits)
        return self._items

    @property
    def is_dense(self) -> bool:
        return self._bits is not None

    def __len__(self):
        if self._bits is not None:
            return self._bits.bit_count()
        return len(self._items)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        x = self.ring.canon(x)
        if self._bits is not None:
            return bool(self._bits >> x & 1)
        i = bisect_left(self._items, x)
        return i < len(self._items) and self._items[i] == x

    def __eq__(self, other):
        if not isinstance(other, ElemSet):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self._bits is not None:
            return self._bits == other._bits
        return self._items == other._items

    def __hash__(self):
        if self._hash is None:
            key = self._bits if self._bits is not None else self._items
            self._hash = hash((self.ring, key))
        return self._hash

    def __le__(self, other: ElemSet) -> bool:
        _same_ring(self, other)
        if self._bits is not None:
            return self._bits & ~other._bits == 0
        return set(self._items) <= set(other._items)

    def __ge__(self, other: ElemSet) -> bool:
        return other <= self

    def __or__(self, other: ElemSet) -> ElemSet:
        _same_ring(self, other)
        if self._bits is not None:
            return ElemSet._from_bits(self.ring, self._bits | other._bits)
        return ElemSet(self.ring, self._items + other._items)

    def is_full(self) -> bool:
        return self.ring.p is not None and len(self) == self.ring.p

    def __repr__(self):
        return f"ElemSet({self.ring}, {{{', '.join(map(str, self.elements))}}})"


def _same_ring(a: ElemSet, b: ElemSet) -> None:
    if a.ring != b.ring:
        raise RingMismatch(f"sets live in different rings: {a.ring} vs {b.ring}")


def parse_set(text: str, ring: RingSpec) -> ElemSet:
    """Parse a literal like ``"0,1,3"``; values are reduced mod p on ingestion."""
    raw = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    result = ElemSet(ring, raw)
    if len(result) < len(set(raw)):
        warnings.warn(
            f"reducing {sorted(set(raw))} into {ring} merged duplicates; |A| = {len(result)}",
            stacklevel=2,
        )
    return result


def format_set(A: ElemSet) -> str:
    return "{" + ", ".join(map(str, A.elements)) + "}"


# --- sums --------------------------------------------------------------------


def sumset(A: ElemSet, B: ElemSet) -> ElemSet:
    _same_ring(A, B)
    ring = A.ring
    if not len(A) or not len(B):
        return ElemSet(ring)
    if A.is_dense:
        p = ring.p
        mask = (1 << p) - 1
        if len(B) > len(A):
            A, B = B, A
        acc = 0
        for b in B.elements:
            acc |= _rotate(A._bits, b, p, mask)
            if acc == mask:
                break
        return ElemSet._from_bits(ring, acc)
    return ElemSet(ring, (a + b for a in A.elements for b in B.elements))


def negate(A: ElemSet) -> ElemSet:
    return ElemSet(A.ring, (-a for a in A.elements))


def difference_set(A: ElemSet) -> ElemSet:
    return sumset(A, negate(A))


def _iterate(m: int, A: ElemSet, op: Callable[[ElemSet, ElemSet], ElemSet]) -> ElemSet:
    # hA + kA = (h+k)A, so binary doubling is valid
    if m < 1:
        raise ValueError("iteration count must be a positive integer")
    result = None
    power = A
    while True:
        if m & 1:
            result = power if result is None else op(result, power)
        m >>= 1
        if not m:
            return result
        power = op(power, power)


def iter_sumset(m: int, A: ElemSet) -> ElemSet:
    """The m-fold sumset mA = A + ... + A."""
    if A.is_full():
        return A
    return _iterate(m, A, sumset)


def iter_sumset_naive(m: int, A: ElemSet) -> ElemSet:
    result = A
    for _ in range(m - 1):
        result = sumset(result, A)
    return result


# --- products ----------------------------------------------------------------


@lru_cache(maxsize=32)
def _log_tables(p: int) -> tuple[list[int], list[int]]:
    """(exp, log) tables for a primitive root of F_p."""
    order = p - 1
    factors = []
    n = order
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    g = next(
        g for g in range(1, p) if all(pow(g, order // q, p) != 1 for q in factors)
    )
    exp = [1] * order
    for i in range(1, order):
        exp[i] = exp[i - 1] * g % p
    log = [0] * p
    for i, v in enumerate(exp):
        log[v] = i
    return exp, log


_PAIRWISE_LIMIT = 1 << 12


def productset(A: ElemSet, B: ElemSet) -> ElemSet:
    _same_ring(A, B)
    ring = A.ring
    if not len(A) or not len(B):
        return ElemSet(ring)
    if not A.is_dense or len(A) * len(B) <= _PAIRWISE_LIMIT or ring.p < 3:
        return ElemSet(ring, (a * b for a in A.elements for b in B.elements))
    # multiplicative group is cyclic of order p-1: products of units are rotations of logs
    p = ring.p
    exp, log = _log_tables(p)
    order = p - 1
    lmask = (1 << order) - 1
    la = sum(1 << log[a] for a in A.elements if a)
    lb = [log[b] for b in B.elements if b]
    acc = 0
    if la:
        for e in lb:
            acc |= _rotate(la, e, order, lmask)
            if acc == lmask:
                break
    bits = 0
    for e in _bits_to_tuple(acc):
        bits |= 1 << exp[e]
    if 0 in A or 0 in B:
        bits |= 1
    return ElemSet._from_bits(ring, bits)


def iter_productset(m: int, A: ElemSet) -> ElemSet:
    """The m-fold product set A^m = A * ... * A."""
    return _iterate(m, A, productset)


def dilate(a0: int, A: ElemSet) -> ElemSet:
    return ElemSet(A.ring, (a0 * a for a in A.elements))


def normalize_symmetric(A: ElemSet) -> tuple[ElemSet, int]:
    """Rescale A - A so that it is symmetric and contains 0 and 1.

    Returns ``(A', a0)`` with ``a0`` the least nonzero element of ``A - A``
    and ``A' = a0^{-1} * (A - A)``.
    """
    if len(A) <= 1:
        raise SetTooSmall(f"need |A| >= 2, got {len(A)}")
    ring = A.ring
    diff = difference_set(A)
    a0 = next(x for x in diff.elements if x != 0)
    normalized = dilate(ring.inv(a0), diff)
    assert negate(normalized) == normalized
    assert 0 in normalized and 1 in normalized
    assert len(normalized) >= len(A)
    return normalized, a0


# --- traced iteration --------------------------------------------------------


@dataclass
class TraceSet:
    """An m-fold sum or product set remembering one decomposition per element.

    ``levels[k]`` maps every element of the (k+1)-fold set to the pair
    ``(previous, term)`` it was first produced from; level 0 maps each term
    to ``(None, term)``.
    """

    op: str
    base: ElemSet
    levels: list[dict[int, tuple[int | None, int]]] = field(repr=False)

    @property
    def elements(self) -> ElemSet:
        return ElemSet(self.base.ring, self.levels[-1])

    def __contains__(self, x) -> bool:
        return self.base.ring.canon(x) in self.levels[-1]

    def decompose(self, x: int) -> list[int]:
        """The terms (in order) whose sum or product is ``x``."""
        x = self.base.ring.canon(x)
        terms = []
        for level in reversed(self.levels):
            prev, term = level[x]
            terms.append(term)
            x = prev
        terms.reverse()
        return terms

    def replay(self, x: int) -> int:
        ring = self.base.ring
        f = ring.add if self.op == "add" else ring.mul
        terms = self.decompose(x)
        acc = terms[0]
        for t in terms[1:]:
            acc = f(acc, t)
        return acc


def _traced(m: int, A: ElemSet, op: str) -> TraceSet:
    if m < 1:
        raise ValueError("iteration count must be a positive integer")
    ring = A.ring
    f = ring.add if op == "add" else ring.mul
    terms = A.elements
    levels = [{a: (None, a) for a in terms}]
    for _ in range(m - 1):
        prev_level = levels[-1]
        level: dict[int, tuple[int | None, int]] = {}
        for x in sorted(prev_level):
            for a in terms:
                y = f(x, a)
                if y not in level:
                    level[y] = (x, a)
        levels.append(level)
    return TraceSet(op, A, levels)


def traced_iter_sumset(m: int, A: ElemSet) -> TraceSet:
    return _traced(m, A, "add")


def traced_iter_productset(m: int, A: ElemSet) -> TraceSet:
    return _traced(m, A, "mul")


def traced_productset(A: ElemSet, B: ElemSet) -> dict[int, tuple[int, int]]:
    """One ``(a, b)`` witness for every element of ``A * B``."""
    _same_ring(A, B)
    ring = A.ring
    out: dict[int, tuple[int, int]] = {}
    for a in A.elements:
        for b in B.elements:
            out.setdefault(ring.mul(a, b), (a, b))
    return out
