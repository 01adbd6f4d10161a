"""Exterior algebra with fermionic creation/annihilation operators.

Multivectors are sparse maps from bitmask keys to exact scalars; a key
read in increasing order names the wedge of the corresponding basis
vectors.  For the doubled space of dimension 2N, positions N+i stand for
the dual basis vectors, so a single ambient-2N multivector can hold
mixed wedge monomials.

Basis vectors act through the generator kinds:

* ``("e", i)`` - wedge by e_i (creation),
* ``("f", i)`` - contraction by the dual f_i (annihilation),
* ``("g", i)`` / ``("h", i)`` - the sum e_i + f_i and difference e_i - f_i.

Decorated wedge monomials act through antisymmetrized products of the
linear generators; the antisymmetrization is the defining rule and the
grouped fast path is validated against it in the tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .indexsets import IndexSet, _mu_masks, perm_parity
from .linalg import Scalar, format_scalar, normalize_scalar, parse_scalar
from .partitions import Partition, particle_positions

Generator = tuple[str, int]

_KINDS = ("e", "f", "g", "h")


class ExteriorError(ValueError):
    pass


class AmbientMismatchError(ExteriorError):
    pass


class GradeOutOfRangeError(ExteriorError):
    pass


class RepeatedFactorError(ExteriorError):
    pass


KeyLike = Union[int, IndexSet, Iterable[int]]


def _as_mask(key: KeyLike, ambient: int) -> int:
    if isinstance(key, IndexSet):
        if key.ambient != ambient:
            raise AmbientMismatchError("key ambient mismatch")
        return key.mask
    if isinstance(key, int):
        mask = key
    else:
        mask = 0
        for e in key:
            mask |= 1 << (e - 1)
    if mask < 0 or mask >> ambient:
        raise AmbientMismatchError("key outside ambient")
    return mask


def _add(acc: dict[int, Scalar], key: int, value: Scalar) -> None:
    new = acc.get(key, 0) + value
    if new == 0:
        acc.pop(key, None)
    else:
        acc[key] = new


def _key_order(mask: int) -> tuple:
    return (mask.bit_count(), tuple(IndexSet(mask, 63).elements) if mask else ())


class Multivector:
    """Sparse exterior-algebra element with exact coefficients."""

    __slots__ = ("ambient", "_terms")

    def __init__(self, ambient: int, terms: Mapping[KeyLike, Scalar] | None = None):
        if ambient < 0:
            raise ExteriorError("negative ambient")
        self.ambient = ambient
        clean: dict[int, Scalar] = {}
        if terms:
            for key, value in terms.items():
                if value != 0:
                    _add(clean, _as_mask(key, ambient), normalize_scalar(value))
        self._terms = clean

    @staticmethod
    def zero(ambient: int) -> "Multivector":
        return Multivector(ambient)

    @staticmethod
    def scalar(ambient: int, c: Scalar) -> "Multivector":
        return Multivector(ambient, {0: c})

    @staticmethod
    def basis(ambient: int, key: KeyLike) -> "Multivector":
        return Multivector(ambient, {_as_mask(key, ambient): 1})

    def coeff(self, key: KeyLike) -> Scalar:
        return self._terms.get(_as_mask(key, self.ambient), 0)

    def terms(self) -> list[tuple[IndexSet, Scalar]]:
        amb = max(self.ambient, 1)
        return [(IndexSet(m, amb), c)
                for m, c in sorted(self._terms.items(), key=lambda kv: _key_order(kv[0]))]

    def items(self) -> Iterator[tuple[int, Scalar]]:
        return iter(self._terms.items())

    def support(self) -> list[int]:
        return sorted(self._terms, key=_key_order)

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> list[int]:
        return sorted({m.bit_count() for m in self._terms})

    def grade_component(self, r: int) -> "Multivector":
        return Multivector(self.ambient,
                           {m: c for m, c in self._terms.items() if m.bit_count() == r})

    def _check(self, other: "Multivector") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatchError("ambient mismatch")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            _add(acc, m, c)
        return Multivector(self.ambient, acc)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "Multivector":
        if c == 0:
            return Multivector(self.ambient)
        return Multivector(self.ambient, {m: c * v for m, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multivector) and self.ambient == other.ambient
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.ambient, tuple(sorted(self._terms.items()))))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Multivector({self.ambient}, 0)"
        bits = ", ".join(f"{{{','.join(map(str, IndexSet(m, max(self.ambient, 1)).elements))}}}: {c}"
                         for m, c in sorted(self._terms.items(), key=lambda kv: _key_order(kv[0])))
        return f"Multivector({self.ambient}, {bits})"


def lift(v: Multivector, ambient: int) -> Multivector:
    """Reinterpret v inside a larger ambient space (same keys)."""
    if ambient < v.ambient:
        raise AmbientMismatchError("cannot shrink ambient")
    return Multivector(ambient, dict(v._terms))


def volume(ambient: int) -> Multivector:
    return Multivector.basis(ambient, (1 << ambient) - 1)


def basis_seq(ambient: int, seq: Sequence[int]) -> Multivector:
    """Wedge of basis vectors in the given order (zero on repeats)."""
    if len(set(seq)) != len(seq):
        return Multivector.zero(ambient)
    sign = perm_parity(seq)
    return Multivector(ambient, {_as_mask(seq, ambient): sign})


def apply_create(v: Multivector, i: int) -> Multivector:
    """Wedge from the left by basis vector i."""
    if not 1 <= i <= v.ambient:
        raise AmbientMismatchError(f"index {i}")
    bit = 1 << (i - 1)
    below = bit - 1
    acc: dict[int, Scalar] = {}
    for m, c in v._terms.items():
        if m & bit:
            continue
        sign = -1 if (m & below).bit_count() % 2 else 1
        _add(acc, m | bit, sign * c)
    return Multivector(v.ambient, acc)


def apply_annihilate(v: Multivector, i: int) -> Multivector:
    """Interior product with the dual of basis vector i."""
    if not 1 <= i <= v.ambient:
        raise AmbientMismatchError(f"index {i}")
    bit = 1 << (i - 1)
    below = bit - 1
    acc: dict[int, Scalar] = {}
    for m, c in v._terms.items():
        if not m & bit:
            continue
        sign = -1 if (m & below).bit_count() % 2 else 1
        _add(acc, m ^ bit, sign * c)
    return Multivector(v.ambient, acc)


def gamma_linear(x: Generator, v: Multivector) -> Multivector:
    """Action of one generator; g and h act as sums of the e and f actions."""
    kind, i = x
    if kind == "e":
        return apply_create(v, i)
    if kind == "f":
        return apply_annihilate(v, i)
    if kind == "g":
        return apply_create(v, i) + apply_annihilate(v, i)
    if kind == "h":
        return apply_create(v, i) - apply_annihilate(v, i)
    raise ExteriorError(f"unknown generator kind {kind!r}")


def gamma_vector(coeffs: Sequence[Scalar], v: Multivector) -> Multivector:
    """Action of a vector given by 2N coordinates (e-block then f-block)."""
    n = v.ambient
    if len(coeffs) != 2 * n:
        raise AmbientMismatchError("need 2N coordinates")
    acc: dict[int, Scalar] = {}
    for m, cv in v._terms.items():
        for p, cp in enumerate(coeffs):
            if cp == 0:
                continue
            if p < n:
                bit = 1 << p
                if m & bit:
                    continue
                key = m | bit
            else:
                bit = 1 << (p - n)
                if not m & bit:
                    continue
                key = m ^ bit
            sign = -1 if (m & (bit - 1)).bit_count() % 2 else 1
            _add(acc, key, sign * cp * cv)
    return Multivector(n, acc)


def hodge_star(v: Multivector) -> Multivector:
    """Basis-complement involution; on an increasing key the sign is the
    increasing-order split sign of the key."""
    n = v.ambient
    full = (1 << n) - 1
    acc: dict[int, Scalar] = {}
    for m, c in v._terms.items():
        comp = full ^ m
        sign = -1 if _mu_masks(m, comp) % 2 else 1
        _add(acc, comp, sign * c)
    return Multivector(n, acc)


def c_operator(v: Multivector) -> Multivector:
    """Product of the N difference generators h_1 ... h_N applied to v."""
    cur = v._terms
    for i in range(v.ambient, 0, -1):
        bit = 1 << (i - 1)
        below = bit - 1
        nxt: dict[int, Scalar] = {}
        for m, c in cur.items():
            sign = -1 if (m & below).bit_count() % 2 else 1
            if m & bit:
                _add(nxt, m ^ bit, -sign * c)
            else:
                _add(nxt, m | bit, sign * c)
        cur = nxt
    return Multivector(v.ambient, cur)


def scalar_product(v: Multivector, w: Multivector) -> Scalar:
    """Pairing in which increasing-key basis monomials are orthonormal."""
    v._check(w)
    if len(w._terms) < len(v._terms):
        v, w = w, v
    total: Scalar = 0
    for m, c in v._terms.items():
        cw = w._terms.get(m)
        if cw is not None:
            total += c * cw
    return normalize_scalar(total)


def beta0(v: Multivector, w: Multivector) -> Scalar:
    """Scalar bilinear form (v, C w)."""
    return scalar_product(v, c_operator(w))


def _pure_gamma_naive(factors: Sequence[Generator], v: Multivector) -> Multivector:
    m = len(factors)
    acc = Multivector.zero(v.ambient)
    for tau in itertools.permutations(range(m)):
        w = v
        for t in reversed(tau):
            w = gamma_linear(factors[t], w)
            if w.is_zero():
                break
        else:
            acc = acc + w.scale(perm_parity(tau))
            continue
    return acc.scale(Fraction(1, factorial(m)))


def _pair_op(i: int, v: Multivector) -> Multivector:
    # (psi psi+ - psi+ psi)/2 is diagonal: +1/2 on occupied keys, -1/2 otherwise.
    bit = 1 << (i - 1)
    half = Fraction(1, 2)
    return Multivector(v.ambient,
                       {m: (c * half if m & bit else -c * half) for m, c in v._terms.items()})


def _pure_gamma_fast(factors: Sequence[Generator], v: Multivector) -> Multivector:
    keyed = [(i, 0 if kind == "e" else 1) for kind, i in factors]
    sign = perm_parity(keyed)
    ordered = sorted(keyed)
    groups: list[tuple[str, int]] = []
    idx = 0
    while idx < len(ordered):
        i = ordered[idx][0]
        if idx + 1 < len(ordered) and ordered[idx + 1][0] == i:
            groups.append(("pair", i))
            idx += 2
        else:
            groups.append(("e" if ordered[idx][1] == 0 else "f", i))
            idx += 1
    w = v
    for kind, i in reversed(groups):
        if w.is_zero():
            break
        if kind == "pair":
            w = _pair_op(i, w)
        elif kind == "e":
            w = apply_create(w, i)
        else:
            w = apply_annihilate(w, i)
    return w.scale(sign)


def gamma_monomial(factors: Sequence[Generator], v: Multivector,
                   mode: str = "fastpath") -> Multivector:
    """Action of a wedge monomial of generators via antisymmetrization.

    ``naive`` sums all permutations of the factors with their signs;
    ``fastpath`` reorders the factors so generators with distinct indices
    multiply in order and each matched e/f pair contributes its diagonal
    half-difference.  Both modes agree wherever defined.
    """
    if mode not in ("naive", "fastpath"):
        raise ExteriorError(f"unknown mode {mode!r}")
    facs: list[Generator] = []
    for kind, i in factors:
        if kind not in _KINDS:
            raise ExteriorError(f"unknown generator kind {kind!r}")
        if not 1 <= i <= v.ambient:
            raise AmbientMismatchError(f"index {i}")
        facs.append((kind, i))
    if len(set(facs)) != len(facs):
        raise RepeatedFactorError("repeated basis vector in monomial")
    if len(facs) > 2 * v.ambient:
        raise GradeOutOfRangeError("monomial longer than 2N")
    expansions: list[tuple[Scalar, list[Generator]]] = [(1, [])]
    for kind, i in facs:
        if kind in ("e", "f"):
            expansions = [(c, fs + [(kind, i)]) for c, fs in expansions]
        else:
            f_sign = 1 if kind == "g" else -1
            expansions = [item for c, fs in expansions
                          for item in ((c, fs + [("e", i)]), (c * f_sign, fs + [("f", i)]))]
    acc = Multivector.zero(v.ambient)
    for c, fs in expansions:
        if len(set(fs)) != len(fs):
            continue
        w = _pure_gamma_naive(fs, v) if mode == "naive" else _pure_gamma_fast(fs, v)
        acc = acc + w.scale(c)
    return acc


def gamma_nform(sigma: Multivector, v: Multivector, mode: str = "fastpath") -> Multivector:
    """Action of an ambient-2N exterior element, term by term."""
    n = v.ambient
    if sigma.ambient != 2 * n:
        raise AmbientMismatchError("sigma must live in the doubled space")
    acc = Multivector.zero(n)
    for mask, c in sigma.items():
        factors = ef_factors(n, mask)
        acc = acc + gamma_monomial(factors, v, mode).scale(c)
    return acc


def ef_factors(n: int, mask: int) -> list[Generator]:
    """Generator list for an ambient-2N key: e-block then f-block, ascending."""
    return [("e", p) if p <= n else ("f", p - n)
            for p in IndexSet(mask, 2 * n).elements]


def ef_key(n: int, e_elems: Iterable[int], f_elems: Iterable[int]) -> int:
    mask = 0
    for e in e_elems:
        mask |= 1 << (e - 1)
    for f in f_elems:
        mask |= 1 << (n + f - 1)
    return mask


def grade_keys(ambient: int, r: int) -> Iterator[int]:
    for combo in itertools.combinations(range(ambient), r):
        mask = 0
        for b in combo:
            mask |= 1 << b
        yield mask


def beta_form(v: Multivector, w: Multivector, k: int):
    """Grade-k bilinear form.

    For k = 0 this is the scalar (v, Cw); for k >= 1 the coefficient of a
    grade-k key of the doubled space is (v, C Gamma_sigma w) with sigma
    the key's wedge monomial.  The increasing-key monomials are
    orthonormal, so coefficients and pairings against them agree.
    """
    v._check(w)
    n = v.ambient
    if not 0 <= k <= 2 * n:
        raise GradeOutOfRangeError(f"grade {k} outside 0..{2 * n}")
    if k == 0:
        return beta0(v, w)
    acc: dict[int, Scalar] = {}
    for mask in grade_keys(2 * n, k):
        c = beta0(v, gamma_monomial(ef_factors(n, mask), w))
        if c != 0:
            acc[mask] = c
    return Multivector(2 * n, acc)


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    acc: dict[int, Scalar] = {}
    for mu, cu in u._terms.items():
        for mv, cv in v._terms.items():
            if mu & mv:
                continue
            sign = -1 if _mu_masks(mu, mv) % 2 else 1
            _add(acc, mu | mv, sign * cu * cv)
    return Multivector(u.ambient, acc)


def wedge_power(v: Multivector, r: int) -> Multivector:
    if r < 0:
        raise GradeOutOfRangeError("negative wedge power")
    out = Multivector.scalar(v.ambient, 1)
    for _ in range(r):
        out = wedge(out, v)
    return out


def e_desc(n: int, i_set: IndexSet) -> Multivector:
    """Wedge of e-basis vectors of I taken in decreasing order."""
    return basis_seq(n, sorted(i_set.elements, reverse=True))


def star_e_desc(n: int, i_set: IndexSet) -> Multivector:
    return hodge_star(e_desc(n, i_set))


def f_wedge_star_e(n: int, i_set: IndexSet, j_set: IndexSet) -> Multivector:
    """The doubled-space monomial f_I ^ *e_J (both sets decreasing)."""
    f_part = basis_seq(2 * n, [n + e for e in sorted(i_set.elements, reverse=True)])
    return wedge(f_part, lift(star_e_desc(n, j_set), 2 * n))


def nform_basis(n: int, lam: Partition) -> Multivector:
    """Wedge of doubled-space basis vectors at the particle positions of lam."""
    return basis_seq(2 * n, particle_positions(lam, n))


def multivector_to_json(v: Multivector) -> dict:
    amb = max(v.ambient, 1)
    return {
        "ambient": v.ambient,
        "terms": [
            {"key": list(IndexSet(m, amb).elements), "coeff": format_scalar(c)}
            for m, c in sorted(v._terms.items(), key=lambda kv: _key_order(kv[0]))
        ],
    }


def multivector_from_json(obj: dict) -> Multivector:
    ambient = int(obj["ambient"])
    terms: dict[int, Scalar] = {}
    for t in obj["terms"]:
        mask = 0
        for e in t["key"]:
            mask |= 1 << (int(e) - 1)
        terms[mask] = parse_scalar(t["coeff"])
    return Multivector(ambient, terms)
