"""Dense matrices over a :class:`~detset.ring.RingSpec` with exact det/permanent."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .exceptions import NotSquare, RingMismatch, ShapeMismatch
from .ring import INTEGERS, RingSpec

ORACLE_MAX = 8
PERMANENT_MAX = 24


@dataclass(frozen=True)
class Matrix:
    ring: RingSpec
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(self.ring.canon(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ring: RingSpec = INTEGERS) -> Matrix:
        return cls(ring, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: RingSpec = INTEGERS) -> Matrix:
        return cls(ring, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, ring: RingSpec = INTEGERS) -> Matrix:
        return cls(ring, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> Matrix:
        return Matrix(self.ring, tuple(zip(*self.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        return sub(self, other)

    def scale(self, c: int) -> Matrix:
        return Matrix(self.ring, tuple(tuple(c * x for x in row) for row in self.entries))

    def values(self) -> set[int]:
        return {x for row in self.entries for x in row}

    def det(self) -> int:
        return det(self)

    def permanent(self) -> int:
        return permanent(self)

    def to_json(self) -> dict:
        return {
            "p": self.ring.p,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [list(r) for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Matrix:
        ring = RingSpec(obj["p"])
        m = cls(ring, tuple(tuple(r) for r in obj["entries"]))
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
            raise ShapeMismatch("declared shape does not match entries")
        return m


def _require_square(M: Matrix) -> int:
    if not M.is_square:
        raise NotSquare(f"{M.rows}x{M.cols} matrix is not square")
    return M.rows


def det(M: Matrix) -> int:
    """Exact determinant.

    F_p: Gaussian elimination with modular inverses. Z: Bareiss fraction-free
    elimination, every division is exact and is checked to be so.
    """
    n = _require_square(M)
    a = [list(r) for r in M.entries]
    p = M.ring.p
    sign = 1
    if p is not None:
        result = 1
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return 0
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            rk = a[k]
            result = result * rk[k] % p
            inv = pow(rk[k], -1, p)
            for i in range(k + 1, n):
                ri = a[i]
                if ri[k]:
                    f = ri[k] * inv % p
                    for j in range(k + 1, n):
                        ri[j] = (ri[j] - f * rk[j]) % p
        return sign * result % p

    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        rk = a[k]
        pk = rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                q, r = divmod(pk * ri[j] - f * rk[j], prev)
                if r:
                    raise ArithmeticError("non-exact division in fraction-free elimination")
                ri[j] = q
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_oracle(M: Matrix) -> int:
    """Determinant by full permutation expansion (n <= 8)."""
    n = _require_square(M)
    if n > ORACLE_MAX:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX}")
    total = 0
    e = M.entries
    for perm in permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= e[i][j]
            if not prod:
                break
        if prod:
            total += _perm_sign(perm) * prod
    return M.ring.canon(total)


def permanent(M: Matrix) -> int:
    """Ryser's inclusion-exclusion formula, Gray-code ordered, O(2^n n)."""
    n = _require_square(M)
    if n > PERMANENT_MAX:
        raise ValueError(f"permanent limited to n <= {PERMANENT_MAX}")
    cols = list(zip(*M.entries))
    row_sums = [0] * n
    in_set = [False] * n
    total = 0
    sign = -1
    for k in range(1, 1 << n):
        # bit flipped between Gray codes g(k-1) and g(k)
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if in_set[j]:
            for i in range(n):
                row_sums[i] -= col[i]
        else:
            for i in range(n):
                row_sums[i] += col[i]
        in_set[j] = not in_set[j]
        sign = -sign
        prod = 1
        for s in row_sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += sign * prod
    # sign tracked (-1)^(|S|+1); Ryser wants (-1)^(n-|S|)
    return M.ring.canon(total if n % 2 else -total)


def permanent_oracle(M: Matrix) -> int:
    n = _require_square(M)
    if n > ORACLE_MAX:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX}")
    total = 0
    e = M.entries
    for perm in permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= e[i][j]
            if not prod:
                break
        total += prod
    return M.ring.canon(total)


def sub(M: Matrix, N: Matrix) -> Matrix:
    if M.ring != N.ring:
        raise RingMismatch("matrices live in different rings")
    if (M.rows, M.cols) != (N.rows, N.cols):
        raise ShapeMismatch(f"{M.rows}x{M.cols} vs {N.rows}x{N.cols}")
    return Matrix(M.ring, tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(M.entries, N.entries)))


def block2x2(M00: Matrix, M01: Matrix, M10: Matrix, M11: Matrix) -> Matrix:
    blocks = (M00, M01, M10, M11)
    if len({b.ring for b in blocks}) != 1:
        raise RingMismatch("blocks live in different rings")
    if M00.rows != M01.rows or M10.rows != M11.rows or M00.cols != M10.cols or M01.cols != M11.cols:
        raise ShapeMismatch("blocks are not conformable")
    top = tuple(a + b for a, b in zip(M00.entries, M01.entries))
    bottom = tuple(a + b for a, b in zip(M10.entries, M11.entries))
    return Matrix(M00.ring, top + bottom)
