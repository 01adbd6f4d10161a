"""Subspace frames, Plucker and Cartan coordinate systems, affine charts.

A frame is a 2N x N full-rank matrix over the exact scalars whose columns
span an N-plane of the doubled space; rows 1..N are the e-coordinates and
rows N+1..2N the dual f-coordinates.  Plucker coordinates are maximal
minors labelled by box partitions through particle positions (rows taken
in decreasing position order, which fixes all global signs).  Cartan
coordinates pair the spinor image of an isotropic frame against starred
basis monomials; on the big cell they are Pfaffians of principal minors
of the affine chart matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .exterior import (
    Multivector,
    e_desc,
    gamma_vector,
    hodge_star,
    scalar_product,
    wedge,
)
from .indexsets import IndexSet
from .linalg import (
    Matrix,
    Scalar,
    SkewMatrix,
    det_exact,
    format_scalar,
    inverse,
    matrix_from_json,
    matrix_to_json,
    nullspace,
    pfaffian,
    rank,
    select,
    SingularMatrixError,
)
from .partitions import (
    Partition,
    StrictPartition,
    box_partitions,
    particle_positions,
    partition_to_json,
    strict_partitions_bounded,
    strict_to_json,
)


class GrassmannError(ValueError):
    pass


class RankDeficientError(GrassmannError):
    pass


class NotIsotropicError(GrassmannError):
    pass


class RankCollapseError(GrassmannError):
    pass


class NotInBigCellError(GrassmannError):
    pass


class NotSkewChartError(GrassmannError):
    pass


class ShapeMismatchError(GrassmannError):
    pass


@dataclass(frozen=True, slots=True)
class Frame:
    n: int
    w: Matrix

    def __post_init__(self):
        if self.w.rows != 2 * self.n or self.w.cols != self.n:
            raise GrassmannError(f"frame must be {2 * self.n}x{self.n}")
        if rank(self.w) != self.n:
            raise RankDeficientError("frame columns are linearly dependent")

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.w.entries[r][j - 1] for r in range(2 * self.n))

    def mix(self, g: Matrix) -> "Frame":
        """Change of basis of the spanned subspace: W -> W @ G."""
        return Frame(self.n, self.w @ g)


def gram_q(n: int) -> Matrix:
    """Gram matrix of the dual-pairing scalar product: [[0, I], [I, 0]]."""
    return Matrix.from_rows(
        [[1 if j == i + n or i == j + n else 0 for j in range(2 * n)] for i in range(2 * n)]
    )


def v_frame(n: int) -> Frame:
    """The frame of the base subspace spanned by e_1..e_N."""
    return Frame(n, Matrix.from_rows(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        + [[0] * n for _ in range(n)]))


def tilde_v_frame(n: int) -> Frame:
    """The frame of span(e_1..e_{N-1}, f_N), the opposite-component base point."""
    grid = [[0] * n for _ in range(2 * n)]
    for i in range(n - 1):
        grid[i][i] = 1
    grid[2 * n - 1][n - 1] = 1
    return Frame(n, Matrix.from_rows(grid))


def is_isotropic(f: Frame) -> bool:
    n = f.n
    w = f.w.entries
    for a in range(n):
        for b in range(a, n):
            q = sum(w[i][a] * w[n + i][b] + w[n + i][a] * w[i][b] for i in range(n))
            if q != 0:
                return False
    return True


@dataclass(frozen=True)
class PluckerCoordinates:
    n: int
    values: dict[Partition, Scalar]

    def value(self, lam: Partition) -> Scalar:
        return self.values.get(lam, 0)

    def labels(self) -> list[Partition]:
        return sorted(self.values, key=lambda p: (p.weight, p.parts))

    def to_json(self) -> list[dict]:
        return [{"label": partition_to_json(lam), "value": format_scalar(self.values[lam])}
                for lam in self.labels()]


@dataclass(frozen=True)
class CartanCoordinates:
    """One parity component of the Pfaffian coordinate vector.

    ``length_parity`` is the common parity of the label lengths; the
    populated multivector grades then have parity (n - length_parity) mod 2,
    which is the even/odd component tag of the underlying point.
    """

    n: int
    length_parity: int
    values: dict[StrictPartition, Scalar]

    @property
    def component_sign(self) -> str:
        return "+" if (self.n - self.length_parity) % 2 == 0 else "-"

    def value(self, alpha: StrictPartition) -> Scalar:
        return self.values.get(alpha, 0)

    def labels(self) -> list[StrictPartition]:
        return sorted(self.values, key=lambda a: (a.length, a.parts))

    def to_json(self) -> list[dict]:
        return [{"label": strict_to_json(a), "value": format_scalar(self.values[a])}
                for a in self.labels()]


def plucker_coordinates(f: Frame) -> PluckerCoordinates:
    """All maximal minors, labelled by box partitions.

    The minor for a label takes the rows at its particle positions in
    decreasing order.
    """
    n = f.n
    values: dict[Partition, Scalar] = {}
    for lam in box_partitions(n):
        rows = particle_positions(lam, n)
        values[lam] = det_exact(select(f.w, rows, range(1, n + 1)))
    return PluckerCoordinates(n, values)


def plucker_nform(f: Frame) -> Multivector:
    """Wedge of the frame columns inside the doubled exterior algebra."""
    n = f.n
    out = Multivector.scalar(2 * n, 1)
    for j in range(1, n + 1):
        col = f.column(j)
        out = wedge(out, Multivector(2 * n, {1 << r: col[r] for r in range(2 * n) if col[r] != 0}))
    return out


def _graded_lex_keys(n: int):
    for r in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), r):
            mask = 0
            for e in combo:
                mask |= 1 << (e - 1)
            yield mask


def cartan_image(f: Frame, normalize: bool = True, check_rank1: bool = False) -> Multivector:
    """Spinor image of an isotropic frame.

    Applies the product of the columns' operator representatives to basis
    monomials in graded-lex order and returns the first nonzero image,
    scaled so its leading coefficient is 1 when ``normalize`` is set.
    ``check_rank1`` additionally verifies that all monomial images are
    proportional.
    """
    if not is_isotropic(f):
        raise NotIsotropicError("frame is not isotropic")
    n = f.n
    cols = [f.column(j) for j in range(1, n + 1)]

    def image_of(mask: int) -> Multivector:
        v = Multivector.basis(n, mask)
        for col in reversed(cols):
            v = gamma_vector(col, v)
            if v.is_zero():
                break
        return v

    found = None
    for mask in _graded_lex_keys(n):
        v = image_of(mask)
        if not v.is_zero():
            found = v
            break
    if found is None:
        raise RankCollapseError("all basis monomials map to zero")
    if check_rank1:
        for mask in _graded_lex_keys(n):
            other = image_of(mask)
            if not other.is_zero() and not projective_equal(found, other):
                raise RankCollapseError("operator product image is not rank one")
    if normalize:
        lead = found._terms[found.support()[0]]
        found = found.scale(Fraction(1, 1) / lead)
    return found


def _kappa_pairing(v: Multivector, alpha: StrictPartition, n: int) -> Scalar:
    return scalar_product(v, hodge_star(e_desc(n, alpha.index_set(n))))


def cartan_coordinates(f: Frame) -> CartanCoordinates:
    """Pairings of the spinor image against all starred basis monomials."""
    v = cartan_image(f)
    n = f.n
    grade_parities = {g % 2 for g in v.grades()}
    if len(grade_parities) != 1:
        raise RankCollapseError("spinor image mixes parities")
    length_parity = (n - grade_parities.pop()) % 2
    values = {alpha: _kappa_pairing(v, alpha, n)
              for alpha in strict_partitions_bounded(n - 1)
              if alpha.length % 2 == length_parity}
    return CartanCoordinates(n, length_parity, values)


def cartan_big_cell(a: SkewMatrix) -> CartanCoordinates:
    """Cartan coordinates of the big-cell point with affine matrix A.

    Expands the exponential of the quadratic annihilation operator applied
    to the volume form and reads each coordinate off by pairing.
    """
    n = a.n
    pairs = [(i, j, a.entry(i, j)) for i in range(1, n) for j in range(i + 1, n + 1)
             if a.entry(i, j) != 0]

    def quad_op(v: Multivector) -> Multivector:
        acc: dict[int, Scalar] = {}
        for i, j, c in pairs:
            bi, bj = 1 << (i - 1), 1 << (j - 1)
            for m, cv in v._terms.items():
                if not (m & bi) or not (m & bj):
                    continue
                s = -1 if (m & (bj - 1)).bit_count() % 2 else 1
                m1 = m ^ bj
                if (m1 & (bi - 1)).bit_count() % 2:
                    s = -s
                key = m1 ^ bi
                prev = acc.get(key, 0)
                new = prev + s * c * cv
                if new == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = new
        return Multivector(n, acc)

    total = Multivector.basis(n, (1 << n) - 1)
    term = total
    for k in range(1, n // 2 + 1):
        term = quad_op(term).scale(Fraction(1, k))
        if term.is_zero():
            break
        total = total + term
    values = {alpha: _kappa_pairing(total, alpha, n)
              for alpha in strict_partitions_bounded(n - 1) if alpha.length % 2 == 0}
    return CartanCoordinates(n, 0, values)


def cartan_pfaffians(a: SkewMatrix) -> CartanCoordinates:
    """Closed-form big-cell Cartan coordinates: Pfaffians of principal minors.

    The minor for a label is taken at the positions I(alpha) in increasing
    order; this equals the decreasing-order convention value together with
    its (-1)**(r/2) prefactor.
    """
    n = a.n
    values: dict[StrictPartition, Scalar] = {}
    for alpha in strict_partitions_bounded(n - 1):
        if alpha.length % 2:
            continue
        values[alpha] = pfaffian(a.principal(alpha.index_set(n).elements))
    return CartanCoordinates(n, 0, values)


def big_cell_frame(a: SkewMatrix) -> Frame:
    n = a.n
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows += [list(r) for r in a.mat.entries]
    return Frame(n, Matrix.from_rows(rows))


def affine_chart(f: Frame, pivot: IndexSet | None = None) -> SkewMatrix:
    """Affine chart matrix of an isotropic frame.

    The default pivot {1..N} is the big cell: the result is the lower
    block of W (W_top)^-1, skew exactly when the frame is isotropic.  A
    general admissible pivot (one position from each pair {i, N+i}) is
    supported by re-indexing the complementary rows by their partner
    labels, which restores skewness for isotropic frames.
    """
    n = f.n
    if pivot is None:
        pivot = IndexSet.of(range(1, n + 1), 2 * n)
    if pivot.ambient != 2 * n or len(pivot) != n:
        raise ShapeMismatchError("pivot must be an N-subset of the 2N rows")
    partner = {}
    for i in range(1, n + 1):
        chosen = [p for p in (i, n + i) if p in pivot]
        if len(chosen) != 1:
            raise GrassmannError("pivot must pick exactly one of each row pair")
        partner[i] = (i + n) if chosen[0] == i else i
    pivot_rows = list(pivot.elements)
    top = select(f.w, pivot_rows, range(1, n + 1))
    try:
        top_inv = inverse(top)
    except SingularMatrixError:
        raise NotInBigCellError("pivot block of the frame is singular") from None
    prim = f.w @ top_inv
    # column c of the normalized frame is the unit column of pivot row
    # pivot_rows[c]; index chart rows and columns by the pair label 1..N
    col_of_pair = {(p if p <= n else p - n): c for c, p in enumerate(pivot_rows)}
    grid = [[prim.entries[partner[i] - 1][col_of_pair[j]] for j in range(1, n + 1)]
            for i in range(1, n + 1)]
    mat = Matrix.from_rows(grid)
    try:
        return SkewMatrix(mat)
    except Exception:
        raise NotSkewChartError("chart matrix is not skew; frame is not isotropic") from None


def iota_embed(v_columns: Matrix) -> Frame:
    """Tautological embedding of a k-plane of the base space.

    Returns the frame of the direct sum of the plane with its exact
    annihilator in the dual space; the result is always isotropic.
    """
    n, k = v_columns.rows, v_columns.cols
    if rank(v_columns) != k:
        raise RankDeficientError("input columns are linearly dependent")
    ann = nullspace(v_columns.transpose())
    grid = [[v_columns.entries[i][j] for j in range(k)] + [0] * (n - k) for i in range(n)]
    grid += [[0] * k + [ann.entries[i][j] for j in range(n - k)] for i in range(n)]
    return Frame(n, Matrix.from_rows(grid))


def _aligned_items(x, y) -> tuple[list, list]:
    if isinstance(x, Multivector) and isinstance(y, Multivector):
        if x.ambient != y.ambient:
            raise ShapeMismatchError("ambient mismatch")
        keys = sorted(set(x.support()) | set(y.support()))
        return [x.coeff(k) for k in keys], [y.coeff(k) for k in keys]
    if isinstance(x, PluckerCoordinates) and isinstance(y, PluckerCoordinates):
        if x.n != y.n:
            raise ShapeMismatchError("dimension mismatch")
        keys = sorted(set(x.values) | set(y.values), key=lambda p: (p.weight, p.parts))
        return [x.value(k) for k in keys], [y.value(k) for k in keys]
    if isinstance(x, CartanCoordinates) and isinstance(y, CartanCoordinates):
        if x.n != y.n or x.length_parity != y.length_parity:
            raise ShapeMismatchError("coordinate shape mismatch")
        keys = sorted(set(x.values) | set(y.values), key=lambda a: (a.length, a.parts))
        return [x.value(k) for k in keys], [y.value(k) for k in keys]
    if isinstance(x, dict) and isinstance(y, dict):
        if set(x) != set(y):
            raise ShapeMismatchError("key sets differ")
        keys = sorted(x)
        return [x[k] for k in keys], [y[k] for k in keys]
    raise ShapeMismatchError(f"cannot compare {type(x).__name__} with {type(y).__name__}")


def projective_equal(x, y) -> bool:
    """True when x = c * y for one nonzero scalar c.

    The scalar is read from the first jointly nonzero slot and verified
    globally; all-zero objects are never projectively equal to anything.
    """
    xs, ys = _aligned_items(x, y)
    c = None
    for a, b in zip(xs, ys):
        if (a == 0) != (b == 0):
            return False
        if a != 0 and c is None:
            c = Fraction(a) / Fraction(b)
    if c is None:
        return False
    return all(a == c * b for a, b in zip(xs, ys))


def random_frame(n: int, seed: int, bound: int = 9) -> Frame:
    """Seeded random full-rank frame (not generally isotropic)."""
    rng = random.Random(seed)
    while True:
        grid = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(2 * n)]
        m = Matrix.from_rows(grid)
        if rank(m) == n:
            return Frame(n, m)


def random_big_cell_frame(n: int, seed: int, bound: int = 9) -> Frame:
    from .linalg import random_skew

    return big_cell_frame(random_skew(n, seed, bound))


def random_subspace(n: int, k: int, seed: int, bound: int = 9) -> Matrix:
    """Seeded random N x k matrix of rank k (columns span a k-plane)."""
    rng = random.Random(seed)
    while True:
        m = Matrix.from_rows([[rng.randint(-bound, bound) for _ in range(k)] for _ in range(n)])
        if rank(m) == k:
            return m


def frame_to_json(f: Frame) -> dict:
    return {"n": f.n, "w": matrix_to_json(f.w)}


def frame_from_json(obj: dict) -> Frame:
    return Frame(int(obj["n"]), matrix_from_json(obj["w"]))
