"""Exact rational dense linear algebra.

Scalars are plain Python ints or ``fractions.Fraction``; every operation is
exact, there is no floating point anywhere.  Row and column positions are
1-based throughout, matching the labelling used by the coordinate systems
built on top of this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class LinalgError(ValueError):
    pass


class NotSquareError(LinalgError):
    pass


class NotSkewError(LinalgError):
    pass


class IndexOutOfRangeError(LinalgError):
    pass


class SingularMatrixError(LinalgError):
    pass


def normalize_scalar(x: Scalar) -> Scalar:
    """Collapse integral Fractions back to int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def parse_scalar(s: str) -> Scalar:
    return normalize_scalar(Fraction(s))


def format_scalar(x: Scalar) -> str:
    return str(Fraction(x))


def _exact_div(num: Scalar, den: Scalar) -> Scalar:
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r == 0:
            return q
    return normalize_scalar(Fraction(num) / Fraction(den))


@dataclass(frozen=True, slots=True)
class Matrix:
    entries: tuple[tuple[Scalar, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Scalar]]) -> "Matrix":
        grid = tuple(tuple(normalize_scalar(x) for x in row) for row in rows)
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise LinalgError("ragged rows")
        return Matrix(grid)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> Scalar:
        """1-based entry access."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRangeError(f"entry ({i},{j}) of {self.rows}x{self.cols} matrix")
        return self.entries[i - 1][j - 1]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries))) if self.entries else self

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("shape mismatch")
        return Matrix.from_rows(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
        )

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-x for x in row) for row in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix.from_rows(tuple(c * x for x in row) for row in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError("shape mismatch")
        bt = other.transpose().entries
        return Matrix.from_rows(
            tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in self.entries
        )


def select(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Submatrix with rows and columns taken in the given (1-based) order."""
    for r in rows:
        if not 1 <= r <= m.rows:
            raise IndexOutOfRangeError(f"row {r}")
    for c in cols:
        if not 1 <= c <= m.cols:
            raise IndexOutOfRangeError(f"column {c}")
    return Matrix(tuple(tuple(m.entries[r - 1][c - 1] for c in cols) for r in rows))


def submatrix(m: Matrix, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
    """Submatrix with rows/cols selected in increasing order.

    Accepts any iterable of 1-based positions (e.g. an IndexSet).
    """
    return select(m, sorted(rows), sorted(cols))


def det_exact(m: Matrix) -> Scalar:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The determinant of the 0x0 matrix is 1.
    """
    if m.rows != m.cols:
        raise NotSquareError(f"{m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev: Scalar = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * pivot - aik * a[k][j], prev)
            a[i][k] = 0
        prev = pivot
    return normalize_scalar(sign * a[n - 1][n - 1])


def rank(m: Matrix) -> int:
    a = [[Fraction(x) for x in row] for row in m.entries]
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise NotSquareError(f"{m.rows}x{m.cols}")
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return Matrix.from_rows(row[n:] for row in a)


def nullspace(m: Matrix) -> Matrix:
    """Exact kernel basis, returned as the columns of an (cols x k) matrix."""
    nr, nc = m.rows, m.cols
    a = [[Fraction(x) for x in row] for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    cols = []
    for f in free:
        vec = [Fraction(0)] * nc
        vec[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -a[row_idx][f]
        cols.append([normalize_scalar(x) for x in vec])
    if not cols:
        return Matrix.zero(nc, 0)
    return Matrix.from_rows(zip(*cols))


@dataclass(frozen=True, slots=True)
class SkewMatrix:
    mat: Matrix

    def __post_init__(self):
        m = self.mat
        if m.rows != m.cols:
            raise NotSquareError(f"{m.rows}x{m.cols}")
        for i in range(m.rows):
            for j in range(i, m.cols):
                if m.entries[i][j] != -m.entries[j][i]:
                    raise NotSkewError(f"entry ({i + 1},{j + 1})")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Scalar]]) -> "SkewMatrix":
        return SkewMatrix(Matrix.from_rows(rows))

    @staticmethod
    def zero(n: int) -> "SkewMatrix":
        return SkewMatrix(Matrix.zero(n, n))

    @property
    def n(self) -> int:
        return self.mat.rows

    def entry(self, i: int, j: int) -> Scalar:
        return self.mat.entry(i, j)

    def principal(self, positions: Iterable[int]) -> "SkewMatrix":
        pos = sorted(positions)
        return SkewMatrix(select(self.mat, pos, pos))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        return submatrix(self.mat, rows, cols)


def pfaffian(a: SkewMatrix) -> Scalar:
    """Exact Pfaffian by recursive first-row expansion.

    Convention: Pf([[0, x], [-x, 0]]) = x.  Odd dimension gives 0, the
    empty matrix gives 1.
    """
    n = a.n
    if n % 2 == 1:
        return 0
    memo: dict[tuple[int, ...], Scalar] = {(): 1}

    def pf(ix: tuple[int, ...]) -> Scalar:
        got = memo.get(ix)
        if got is not None:
            return got
        i0 = ix[0]
        rest = ix[1:]
        acc: Scalar = 0
        for t, j in enumerate(rest):
            e = a.entry(i0, j)
            if e != 0:
                term = e * pf(rest[:t] + rest[t + 1:])
                acc = acc + term if t % 2 == 0 else acc - term
        memo[ix] = acc
        return acc

    return normalize_scalar(pf(tuple(range(1, n + 1))))


def principal_pfaffians(a: SkewMatrix) -> dict[int, Scalar]:
    """Pfaffians of every principal minor, keyed by bitmask.

    Mask bit ``i-1`` selects row/column ``i``.  Odd-cardinality masks are
    omitted (their Pfaffian is 0 by convention).
    """
    n = a.n
    out: dict[int, Scalar] = {0: 1}
    for mask in range(1, 1 << n):
        if mask.bit_count() % 2 == 1:
            continue
        i0 = (mask & -mask).bit_length()  # 1-based smallest element
        rest = mask ^ (1 << (i0 - 1))
        acc: Scalar = 0
        t = 0
        rr = rest
        while rr:
            j = (rr & -rr).bit_length()
            rr ^= 1 << (j - 1)
            e = a.entry(i0, j)
            if e != 0:
                term = e * out[rest ^ (1 << (j - 1))]
                acc = acc + term if t % 2 == 0 else acc - term
            t += 1
        out[mask] = acc
    return out


def random_skew(n: int, seed: int, bound: int = 9) -> SkewMatrix:
    """Seeded random skew matrix with integer entries in [-bound, bound].

    Deterministic for a fixed (n, seed, bound) triple; the generator is
    Python's Mersenne Twister.
    """
    if n < 0:
        raise LinalgError("negative dimension")
    if bound < 1:
        raise LinalgError("bound must be >= 1")
    rng = random.Random(seed)
    grid = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-bound, bound)
            grid[i][j] = x
            grid[j][i] = -x
    return SkewMatrix.from_rows(grid)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(x) for x in row] for row in m.entries],
    }


def matrix_from_json(obj: dict) -> Matrix:
    entries = [[parse_scalar(x) for x in row] for row in obj["entries"]]
    m = Matrix.from_rows(entries) if entries else Matrix.zero(0, obj.get("cols", 0))
    if m.rows != obj["rows"] or (m.rows and m.cols != obj["cols"]):
        raise LinalgError("inconsistent matrix dimensions in JSON")
    return m
