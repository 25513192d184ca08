"""Dense linear algebra over F2.

Rows are bit-packed into Python integers: column ``j`` is bit ``j``.
Python's arbitrary-precision ints give word-level XOR for free, and all
matrices here have at most a few hundred columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class DimensionError(ValueError):
    """Raised when vector and matrix lengths do not match."""


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def pack(bits: Iterable[int]) -> int:
    word = 0
    for j, b in enumerate(bits):
        if b & 1:
            word |= 1 << j
    return word


def unpack(word: int, length: int) -> list[int]:
    return [(word >> j) & 1 for j in range(length)]


@dataclass(frozen=True)
class F2Vector:
    bits: int
    length: int

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> F2Vector:
        return cls(pack(entries), len(entries))

    @classmethod
    def zero(cls, length: int) -> F2Vector:
        return cls(0, length)

    def to_list(self) -> list[int]:
        return unpack(self.bits, self.length)

    def __add__(self, other: F2Vector) -> F2Vector:
        if self.length != other.length:
            raise DimensionError(f"length {self.length} != {other.length}")
        return F2Vector(self.bits ^ other.bits, self.length)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True)
class F2Matrix:
    rows: tuple[int, ...]
    ncols: int

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> F2Matrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionError(f"row of length {len(r)} in a matrix with {ncols} columns")
        return cls(tuple(pack(r) for r in rows), ncols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[F2Vector], ncols: int | None = None) -> F2Matrix:
        if ncols is None:
            ncols = vectors[0].length if vectors else 0
        for v in vectors:
            if v.length != ncols:
                raise DimensionError(f"vector of length {v.length} in a matrix with {ncols} columns")
        return cls(tuple(v.bits for v in vectors), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.rows[i], self.ncols)

    def to_lists(self) -> list[list[int]]:
        return [unpack(r, self.ncols) for r in self.rows]


class RowReduction(NamedTuple):
    rref: F2Matrix
    rank: int
    pivots: list[int]


def _eliminate(rows: Sequence[int], track: bool = False):
    """Gauss-Jordan elimination.

    Returns ``(reduced, pivots, combos)`` where ``reduced[k]`` has its lowest
    set bit at ``pivots[k]`` and ``combos[k]`` records which input rows were
    summed to produce it (only when ``track`` is set).
    """
    reduced: list[int] = []
    pivots: list[int] = []
    combos: list[int] = []
    for idx, row in enumerate(rows):
        combo = 1 << idx if track else 0
        for k, p in enumerate(pivots):
            if (row >> p) & 1:
                row ^= reduced[k]
                combo ^= combos[k] if track else 0
        if not row:
            continue
        p = _lowbit(row)
        # clear column p from the earlier rows to stay fully reduced
        for k in range(len(reduced)):
            if (reduced[k] >> p) & 1:
                reduced[k] ^= row
                if track:
                    combos[k] ^= combo
        reduced.append(row)
        pivots.append(p)
        combos.append(combo)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[k] for k in order], [pivots[k] for k in order], [combos[k] for k in order]


def row_reduce(m: F2Matrix) -> RowReduction:
    reduced, pivots, _ = _eliminate(m.rows)
    return RowReduction(F2Matrix(tuple(reduced), m.ncols), len(pivots), pivots)


def rank(m: F2Matrix) -> int:
    return row_reduce(m).rank


def reduce_vector(rref: F2Matrix, pivots: Sequence[int], v: int) -> int:
    """Reduce a packed vector against a matrix in reduced row echelon form."""
    for row, p in zip(rref.rows, pivots):
        if (v >> p) & 1:
            v ^= row
    return v


def span_membership(m: F2Matrix, v: F2Vector) -> tuple[bool, F2Vector | None]:
    """Decide whether ``v`` lies in the row span of ``m``.

    When it does, also return coefficients ``c`` over the rows of ``m`` with
    ``sum(c[i] * m.rows[i]) == v``.
    """
    if m.nrows and v.length != m.ncols:
        raise DimensionError(f"vector of length {v.length} against {m.ncols} columns")
    reduced, pivots, combos = _eliminate(m.rows, track=True)
    rest, combo = v.bits, 0
    for row, p, c in zip(reduced, pivots, combos):
        if (rest >> p) & 1:
            rest ^= row
            combo ^= c
    if rest:
        return False, None
    return True, F2Vector(combo, m.nrows)


def kernel(m: F2Matrix) -> F2Matrix:
    """Basis of ``{x : m x = 0}``, one basis vector per row."""
    red = row_reduce(m)
    pivot_set = set(red.pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for row, p in zip(red.rref.rows, red.pivots):
            if (row >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return F2Matrix(tuple(basis), m.ncols)
