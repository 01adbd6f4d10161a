"""Bitmask index sets over {1..M} and their sign combinatorics.

Sets are stored canonically in increasing order.  The decreasing-order
convention used by the spinor-basis formulas is reached through explicit
adapters (``order="decreasing"`` in :func:`split_sign`, reversal signs in
the exterior-algebra layer); the two differ per set only by reversal
parities, so every identity checked here is stated for one fixed choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .linalg import Matrix, Scalar, det_exact

MAX_AMBIENT = 63


class IndexSetError(ValueError):
    pass


class NonDisjointError(IndexSetError):
    pass


class IncompatibleQuadrupleError(IndexSetError):
    """The quadruple fails the union/intersection matching conditions.

    Signals a structurally zero bracket, not caller misuse.
    """


class NoPartnerError(IndexSetError):
    pass


class OddCardinalityError(IndexSetError):
    pass


@dataclass(frozen=True, slots=True)
class IndexSet:
    mask: int
    ambient: int

    def __post_init__(self):
        if not 1 <= self.ambient <= MAX_AMBIENT:
            raise IndexSetError(f"ambient {self.ambient} out of range 1..{MAX_AMBIENT}")
        if self.mask < 0 or self.mask >> self.ambient:
            raise IndexSetError("elements outside 1..ambient")

    @staticmethod
    def of(elems: Iterable[int], ambient: int) -> "IndexSet":
        mask = 0
        for e in elems:
            if not 1 <= e <= ambient:
                raise IndexSetError(f"element {e} outside 1..{ambient}")
            mask |= 1 << (e - 1)
        return IndexSet(mask, ambient)

    @staticmethod
    def empty(ambient: int) -> "IndexSet":
        return IndexSet(0, ambient)

    @staticmethod
    def full(ambient: int) -> "IndexSet":
        return IndexSet((1 << ambient) - 1, ambient)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(mask_elements(self.mask))

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.ambient and bool(self.mask >> (e - 1) & 1)

    def __repr__(self) -> str:
        return f"IndexSet({{{', '.join(map(str, self.elements))}}}, ambient={self.ambient})"

    def _check(self, other: "IndexSet") -> None:
        if self.ambient != other.ambient:
            raise IndexSetError("ambient mismatch")

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.mask | other.mask, self.ambient)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.mask & other.mask, self.ambient)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.mask & ~other.mask, self.ambient)

    def issubset(self, other: "IndexSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "IndexSet") -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def is_empty(self) -> bool:
        return self.mask == 0

    def complement(self) -> "IndexSet":
        return IndexSet(~self.mask & ((1 << self.ambient) - 1), self.ambient)


def mask_elements(mask: int) -> Iterator[int]:
    """Yield the 1-based elements of a bitmask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def perm_parity(seq: Sequence[int]) -> int:
    """Sign of the permutation given by a sequence of distinct comparables."""
    inv = 0
    n = len(seq)
    for i in range(n):
        si = seq[i]
        for j in range(i + 1, n):
            if si > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def complement(i_set: IndexSet) -> IndexSet:
    return i_set.complement()


def mu_count(e_set: IndexSet, f_set: IndexSet) -> int:
    """Number of inverted pairs (i, j) with i in E, j in F and i > j."""
    if not e_set.isdisjoint(f_set):
        raise NonDisjointError("mu_count requires disjoint sets")
    return _mu_masks(e_set.mask, f_set.mask)


def _mu_masks(e_mask: int, f_mask: int) -> int:
    count = 0
    m = e_mask
    while m:
        low = m & -m
        count += (f_mask & (low - 1)).bit_count()
        m ^= low
    return count


def split_sign(i_set: IndexSet, order: str = "decreasing") -> int:
    """Sign of the block permutation (I, complement of I) of (1..N).

    ``order`` fixes how the two blocks are written out: "decreasing" is the
    spinor-basis convention, "increasing" the one matching increasing
    storage keys.  The two differ by the reversal parities of both blocks.
    """
    n = i_set.ambient
    r = i_set.cardinality
    comp = i_set.complement()
    sign = -1 if _mu_masks(i_set.mask, comp.mask) % 2 else 1
    if order == "increasing":
        return sign
    if order == "decreasing":
        rev = (r * (r - 1) // 2 + (n - r) * (n - r - 1) // 2) % 2
        return -sign if rev else sign
    raise IndexSetError(f"unknown order {order!r}")


@dataclass(frozen=True, slots=True)
class AbcdsDecomposition:
    """Disjoint block decomposition of a compatible quadruple (I, J, K, L).

    A = (I&K)\\S, B = (I&L)\\S, C = (J&K)\\S, D = (J&L)\\S, S = I&J = K&L,
    T = the disjoint union of all five.
    """

    A: IndexSet
    B: IndexSet
    C: IndexSet
    D: IndexSet
    S: IndexSet
    T: IndexSet

    @property
    def a(self) -> int:
        return self.A.cardinality

    @property
    def b(self) -> int:
        return self.B.cardinality

    @property
    def c(self) -> int:
        return self.C.cardinality

    @property
    def d(self) -> int:
        return self.D.cardinality

    @property
    def s(self) -> int:
        return self.S.cardinality

    @property
    def t(self) -> int:
        return self.T.cardinality


def decompose_abcds(i_set: IndexSet, j_set: IndexSet,
                    k_set: IndexSet, l_set: IndexSet) -> AbcdsDecomposition:
    """Split a quadruple into the disjoint blocks (A, B, C, D, S, T).

    Raises :class:`IncompatibleQuadrupleError` when K|L != I|J or
    K&L != I&J; that case signals a structurally zero bracket.
    """
    for other in (j_set, k_set, l_set):
        i_set._check(other)
    if (k_set | l_set) != (i_set | j_set) or (k_set & l_set) != (i_set & j_set):
        raise IncompatibleQuadrupleError("K,L do not match I,J on union/intersection")
    s = i_set & j_set
    return AbcdsDecomposition(
        A=(i_set & k_set) - s,
        B=(i_set & l_set) - s,
        C=(j_set & k_set) - s,
        D=(j_set & l_set) - s,
        S=s,
        T=i_set | j_set,
    )


def partner_set(i_set: IndexSet, j_set: IndexSet, k_set: IndexSet) -> IndexSet:
    """The unique L with K|L = I|J and K&L = I&J, given K."""
    union = i_set | j_set
    inter = i_set & j_set
    if not k_set.issubset(union) or not inter.issubset(k_set):
        raise NoPartnerError("K must satisfy I&J <= K <= I|J")
    return (union - k_set) | inter


def nu_exponent(i_set: IndexSet, j_set: IndexSet,
                k_set: IndexSet, l_set: IndexSet) -> int:
    """mu(A,B) + mu(A,C) + mu(C,D) + mu(B,D) for the block decomposition."""
    d = decompose_abcds(i_set, j_set, k_set, l_set)
    return (_mu_masks(d.A.mask, d.B.mask) + _mu_masks(d.A.mask, d.C.mask)
            + _mu_masks(d.C.mask, d.D.mask) + _mu_masks(d.B.mask, d.D.mask))


def signed_perm_sign(i_set: IndexSet, j_set: IndexSet,
                     k_set: IndexSet, l_set: IndexSet) -> int:
    """Sign of the signed-sequence permutation taking (K+|L-) to (I^e|J^e).

    Every element of K carries +, every element of L carries -.  On the
    target side an I-element is + exactly when it lies in K, and a
    J-element is + exactly when it lies in K but not in the overlap S;
    this is the unique assignment making the two sequences anagrams.
    """
    decompose_abcds(i_set, j_set, k_set, l_set)  # validates compatibility
    s_mask = (i_set & j_set).mask
    target = [(e, 1) for e in k_set] + [(e, -1) for e in l_set]
    source = [(e, 1 if e in k_set else -1) for e in i_set]
    source += [(e, 1 if (e in k_set and not (s_mask >> (e - 1)) & 1) else -1)
               for e in j_set]
    pos = {sym: p for p, sym in enumerate(target)}
    return perm_parity([pos[sym] for sym in source])


def _delta_oracle(i_set: IndexSet, j_set: IndexSet,
                  k_set: IndexSet, l_set: IndexSet) -> Scalar:
    n = i_set.ambient
    cols = list(k_set.elements) + [e + n for e in l_set.elements]

    def block_row(e_row: int, f_side: bool) -> tuple[int, ...]:
        # Row e_row of [[I, I], [I, -I]] restricted to the chosen columns.
        out = []
        for c in cols:
            base = c if c <= n else c - n
            if base != e_row:
                out.append(0)
            else:
                out.append(-1 if (f_side and c > n) else 1)
        return tuple(out)

    rows = [block_row(e, False) for e in i_set.elements]
    rows += [block_row(e, True) for e in j_set.elements]
    return det_exact(Matrix(tuple(rows)))


def delta_bracket(i_set: IndexSet, j_set: IndexSet,
                  k_set: IndexSet, l_set: IndexSet, mode: str = "closed") -> Scalar:
    """Determinant bracket of a quadruple of index sets.

    ``oracle`` evaluates the defining determinant of the selected
    submatrix of [[I, I], [I, -I]] directly; ``closed`` uses the closed
    form (-1)**(jd + nu) * 2**s, which requires |K| and |L| even, and
    returns 0 when the compatibility conditions fail.
    """
    if len(i_set) + len(j_set) != len(k_set) + len(l_set):
        raise IndexSetError("|I|+|J| must equal |K|+|L|")
    if mode == "oracle":
        return _delta_oracle(i_set, j_set, k_set, l_set)
    if mode != "closed":
        raise IndexSetError(f"unknown mode {mode!r}")
    if len(k_set) % 2 or len(l_set) % 2:
        raise OddCardinalityError("closed form needs |K|, |L| even")
    try:
        dec = decompose_abcds(i_set, j_set, k_set, l_set)
    except IncompatibleQuadrupleError:
        return 0
    nu = nu_exponent(i_set, j_set, k_set, l_set)
    exponent = len(j_set) * dec.d + nu
    value = 1 << dec.s
    return -value if exponent % 2 else value
