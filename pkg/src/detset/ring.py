"""Exact arithmetic in F_p and in the integers.

Elements are plain Python ints. Over F_p the canonical representative is the
least non-negative residue; over the integers every int is canonical. Python
ints are arbitrary precision, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .exceptions import CompositeModulus, DivisionByZero, NoInverseInIntegerRing


class RingKind(str, Enum):
    PRIME_FIELD = "PrimeField"
    INTEGERS = "Integers"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ambient ring: F_p when ``p`` is set, the integers when ``p is None``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise CompositeModulus(self.p)

    @property
    def kind(self) -> RingKind:
        return RingKind.INTEGERS if self.p is None else RingKind.PRIME_FIELD

    @property
    def is_field(self) -> bool:
        return self.p is not None

    def canon(self, x: int) -> int:
        return int(x) if self.p is None else int(x) % self.p

    def add(self, x: int, y: int) -> int:
        return self.canon(x + y)

    def sub(self, x: int, y: int) -> int:
        return self.canon(x - y)

    def mul(self, x: int, y: int) -> int:
        return self.canon(x * y)

    def neg(self, x: int) -> int:
        return self.canon(-x)

    def inv(self, x: int) -> int:
        if self.p is None:
            if x in (1, -1):
                return x
            if x == 0:
                raise DivisionByZero("0 has no inverse")
            raise NoInverseInIntegerRing(f"{x} is not a unit of Z")
        x %= self.p
        if x == 0:
            raise DivisionByZero("0 has no inverse")
        return pow(x, -1, self.p)

    def power(self, x: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(x), -e)
        return x**e if self.p is None else pow(x, e, self.p)

    def signed(self, x: int) -> int:
        """Representative of ``x`` in (-p/2, p/2]; identity over Z."""
        if self.p is None:
            return x
        x %= self.p
        return x - self.p if x > self.p // 2 else x

    def __str__(self):
        return "Z" if self.p is None else f"F_{self.p}"

    def to_json(self):
        return self.p


INTEGERS = RingSpec()


def make_ring(kind: RingKind | str, p: int | None = None) -> RingSpec:
    kind = RingKind(kind)
    if kind is RingKind.INTEGERS:
        if p is not None:
            raise ValueError("the integer ring takes no modulus")
        return INTEGERS
    if p is None or p < 2:
        raise ValueError("a prime field needs a modulus p >= 2")
    return RingSpec(p)
