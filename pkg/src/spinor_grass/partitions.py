"""Partitions, strict partitions and their surgery operations.

Partitions label determinantal coordinates (through particle positions),
strict partitions label Pfaffian coordinates (through I(alpha) = alpha+1).
The surgery operations here feed the quadratic coordinate relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .indexsets import IndexSet


class PartitionError(ValueError):
    pass


class BoxOverflowError(PartitionError):
    pass


class PartRangeError(PartitionError):
    pass


class DuplicatePartError(PartitionError):
    pass


class PartIndexError(PartitionError):
    pass


@dataclass(frozen=True, slots=True)
class Partition:
    """Weakly decreasing positive parts; trailing zeros are never stored."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise PartitionError(f"parts not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise PartitionError(f"negative part in {parts}")

    @staticmethod
    def of(parts: Iterable[int]) -> "Partition":
        return Partition(tuple(parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """1-based part access; rows past the length are 0."""
        if i < 1:
            raise PartIndexError(f"row {i}")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def fits_box(self, n: int) -> bool:
        return self.length <= n and (not self.parts or self.parts[0] <= n)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(tuple(cols))

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


@dataclass(frozen=True, slots=True)
class StrictPartition:
    """Strictly decreasing parts >= 0; a single trailing 0 part is allowed."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for a, b in zip(parts, parts[1:]):
            if a <= b:
                raise PartitionError(f"parts not strictly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise PartitionError(f"negative part in {parts}")

    @staticmethod
    def of(parts: Iterable[int]) -> "StrictPartition":
        return StrictPartition(tuple(parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    def index_set(self, ambient: int) -> IndexSet:
        """I(alpha): add 1 to each part, landing in {1..ambient}."""
        return IndexSet.of((p + 1 for p in self.parts), ambient)

    def __repr__(self) -> str:
        return f"StrictPartition{self.parts}"


@dataclass(frozen=True, slots=True)
class FrobeniusCoords:
    alpha: StrictPartition
    beta: StrictPartition

    def __post_init__(self):
        if self.alpha.length != self.beta.length:
            raise PartitionError("arm and leg coordinates must have equal length")

    @property
    def rank(self) -> int:
        return self.alpha.length


def particle_positions(lam: Partition, n: int) -> tuple[int, ...]:
    """l_j = lam_j - j + n + 1 for j = 1..n, strictly decreasing in 1..2n."""
    if not lam.fits_box(n):
        raise BoxOverflowError(f"{lam} does not fit the {n}x{n} box")
    return tuple(lam.part(j) - j + n + 1 for j in range(1, n + 1))


def partition_from_positions(positions: Iterable[int], n: int) -> Partition:
    """Inverse of particle_positions on n-subsets of {1..2n}."""
    pos = sorted(positions, reverse=True)
    if len(pos) != n or len(set(pos)) != n:
        raise PartitionError("need n distinct positions")
    if pos and (pos[0] > 2 * n or pos[-1] < 1):
        raise PartitionError("positions outside 1..2n")
    return Partition(tuple(p + j - n - 1 for j, p in enumerate(pos, start=1)))


def frobenius_split(lam: Partition) -> FrobeniusCoords:
    """Frobenius coordinates (arms | legs) along the main diagonal."""
    conj = lam.conjugate()
    r = 0
    while lam.part(r + 1) >= r + 1:
        r += 1
    alpha = tuple(lam.part(i) - i for i in range(1, r + 1))
    beta = tuple(conj.part(i) - i for i in range(1, r + 1))
    return FrobeniusCoords(StrictPartition(alpha), StrictPartition(beta))


def frobenius_join(alpha: StrictPartition, beta: StrictPartition) -> Partition:
    """Rebuild a partition from its Frobenius coordinates."""
    if alpha.length != beta.length:
        raise PartitionError("arm and leg coordinates must have equal length")
    r = alpha.length
    rows = [alpha.parts[i] + i + 1 for i in range(r)]
    depth = beta.parts[0] + 1 if r else 0
    for i in range(r + 1, depth + 1):
        rows.append(sum(1 for j in range(r) if beta.parts[j] + j + 1 >= i))
    return Partition(tuple(rows))


def rect_complement(alpha: StrictPartition, n: int) -> StrictPartition:
    """Complement of alpha in the r x n rectangle of columns 0..n-1, reversed."""
    r = alpha.length
    if any(p > n - 1 for p in alpha.parts):
        raise PartRangeError(f"parts of {alpha} must be <= {n - 1}")
    return StrictPartition(tuple(n - 1 - alpha.parts[r - i] for i in range(1, r + 1)))


def pseudosymmetric(alpha: StrictPartition, n: int) -> Partition:
    """The partition whose Frobenius legs are the rectangle complement of alpha."""
    return frobenius_join(alpha, rect_complement(alpha, n))


def plucker_remove(lam: Partition, i: int, length: Optional[int] = None) -> tuple[Partition, int]:
    """Drop row i, bumping every earlier row by one.

    ``length`` pads lam with zero rows, so removal of padded rows is
    well defined; default is the true length.
    """
    ell = lam.length if length is None else length
    if length is not None and length < lam.length:
        raise PartIndexError("padded length shorter than the partition")
    if not 1 <= i <= ell:
        raise PartIndexError(f"row {i} of a length-{ell} partition")
    parts = [lam.part(j) + 1 for j in range(1, i)]
    parts += [lam.part(j) for j in range(i + 1, ell + 1)]
    return Partition(tuple(parts)), lam.part(i)


def plucker_insert(mu: Partition, u: int) -> Optional[tuple[Partition, int]]:
    """Insert a new row encoding u, lowering the rows it jumps over.

    Returns (partition, k) with k the insertion position, or None when
    u = mu_k - k - 1 for some k (the undefined clash case).
    """
    k = 1
    while True:
        threshold = mu.part(k) - k - 1
        if u == threshold:
            return None
        if u > threshold:
            break
        k += 1
    parts = [mu.part(j) - 1 for j in range(1, k)]
    parts.append(u + k)
    parts += [mu.part(j) for j in range(k, mu.length + 1)]
    return Partition(tuple(parts)), k


def strict_insert(alpha: StrictPartition, m: int) -> tuple[StrictPartition, int]:
    """Add the part m, keeping strict decrease; returns the new label and position."""
    if m < 0:
        raise PartRangeError("parts must be >= 0")
    if m in alpha.parts:
        raise DuplicatePartError(f"part {m} already present in {alpha}")
    pos = sum(1 for p in alpha.parts if p > m) + 1
    parts = alpha.parts[:pos - 1] + (m,) + alpha.parts[pos - 1:]
    return StrictPartition(parts), pos


def strict_remove(alpha: StrictPartition, i: int) -> tuple[StrictPartition, int]:
    """Omit the part at 1-based position i."""
    if not 1 <= i <= alpha.length:
        raise PartIndexError(f"part index {i} of {alpha}")
    return StrictPartition(alpha.parts[:i - 1] + alpha.parts[i:]), alpha.parts[i - 1]


def count_greater(alpha: StrictPartition, m: int) -> int:
    """Number of parts of alpha strictly greater than m."""
    return sum(1 for p in alpha.parts if p > m)


def box_partitions(n: int) -> Iterator[Partition]:
    """All partitions fitting in the n x n box, in position-set order."""
    for combo in itertools.combinations(range(1, 2 * n + 1), n):
        yield partition_from_positions(combo, n)


def strict_partitions_bounded(max_part: int) -> Iterator[StrictPartition]:
    """All strict partitions with parts in {0..max_part} (2**(max_part+1) labels)."""
    values = range(max_part, -1, -1)
    for r in range(max_part + 2):
        for combo in itertools.combinations(values, r):
            yield StrictPartition(combo)


def partition_to_json(lam: Partition) -> list[int]:
    return list(lam.parts)


def partition_from_json(obj: Iterable[int]) -> Partition:
    return Partition(tuple(int(x) for x in obj))


def strict_to_json(alpha: StrictPartition) -> list[int]:
    return list(alpha.parts)


def strict_from_json(obj: Iterable[int]) -> StrictPartition:
    return StrictPartition(tuple(int(x) for x in obj))
