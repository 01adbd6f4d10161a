"""Verification engine for the bilinear coordinate identities.

Every check returns a :class:`CheckReport` carrying both sides' exact
values, never just a boolean, so a regression localizes to a specific
equation and instance.  Suites drive the checks over seeded random
instances with deterministic enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import itertools

from .exterior import (
    Multivector,
    beta_form,
    c_operator,
    ef_key,
    multivector_to_json,
    wedge,
    wedge_power,
)
from .grassmann import (
    CartanCoordinates,
    Frame,
    NotInBigCellError,
    NotIsotropicError,
    PluckerCoordinates,
    cartan_big_cell,
    cartan_image,
    is_isotropic,
    plucker_coordinates,
    plucker_nform,
    projective_equal,
    random_big_cell_frame,
    random_frame,
    tilde_v_frame,
    v_frame,
)
from .indexsets import (
    IndexSet,
    decompose_abcds,
    delta_bracket,
    partner_set,
    signed_perm_sign,
)
from .linalg import (
    Matrix,
    Scalar,
    SkewMatrix,
    det_exact,
    format_scalar,
    principal_pfaffians,
    random_skew,
    select,
    submatrix,
)
from .partitions import (
    Partition,
    PartRangeError,
    StrictPartition,
    box_partitions,
    count_greater,
    frobenius_split,
    strict_insert,
    strict_partitions_bounded,
    strict_remove,
)


class CardinalityMismatchError(ValueError):
    pass


def value_to_json(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, Fraction)):
        return format_scalar(v)
    if isinstance(v, Multivector):
        return multivector_to_json(v)
    if isinstance(v, (PluckerCoordinates, CartanCoordinates)):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): value_to_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [value_to_json(x) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


@dataclass(frozen=True)
class CheckReport:
    name: str
    instance: dict
    lhs: object
    rhs: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "lhs": value_to_json(self.lhs),
            "rhs": value_to_json(self.rhs),
            "passed": self.passed,
        }


def compatible_even_pairs(i_set: IndexSet, j_set: IndexSet) -> Iterator[tuple[IndexSet, IndexSet]]:
    """All (K, L) with K|L = I|J, K&L = I&J and both cardinalities even.

    K runs over even-cardinality supersets of the overlap inside the
    union, in increasing bitmask order; L is the forced partner.
    """
    union = i_set | j_set
    inter = i_set & j_set
    diff = union - inter
    free = diff.mask
    sub = 0
    while True:
        k_set = IndexSet(inter.mask | sub, i_set.ambient)
        if len(k_set) % 2 == 0:
            l_set = partner_set(i_set, j_set, k_set)
            if len(l_set) % 2 == 0:
                yield k_set, l_set
        if sub == free:
            break
        sub = (sub - free) & free  # next subset of the free positions


def check_cauchy_binet_pfaffian(a: SkewMatrix, i_set: IndexSet, j_set: IndexSet,
                                pf: Optional[dict[int, Scalar]] = None,
                                instance: Optional[dict] = None) -> CheckReport:
    """Minor determinant as a bilinear sum of principal-minor Pfaffians.

    The main form weighs each (K, L) term with the closed-form bracket;
    the single-sum form produces the same weight through the independent
    signed-permutation construction.  Both must agree with each other and
    with the determinant.
    """
    if len(i_set) != len(j_set):
        raise CardinalityMismatchError("|I| must equal |J|")
    r = len(i_set)
    if pf is None:
        pf = principal_pfaffians(a)
    lhs = det_exact(a.submatrix(i_set, j_set))
    s = len(i_set & j_set)
    acc_main: Scalar = 0
    acc_single: Scalar = 0
    for k_set, l_set in compatible_even_pairs(i_set, j_set):
        pf_kl = pf[k_set.mask] * pf[l_set.mask]
        if pf_kl == 0:
            continue
        half_l = len(l_set) // 2
        delta = delta_bracket(i_set, j_set, k_set, l_set, mode="closed")
        acc_main += (-1) ** half_l * delta * pf_kl
        dec = decompose_abcds(i_set, j_set, k_set, l_set)
        sgn = signed_perm_sign(i_set, j_set, k_set, l_set)
        acc_single += (-1) ** (half_l + dec.b) * sgn * pf_kl
    pref = (-1) ** (r * (r - 1) // 2)
    rhs_main = Fraction(pref, 1 << r) * acc_main
    rhs_single = Fraction(pref, 1 << (r - s)) * acc_single
    inst = dict(instance or {})
    inst.update({"n": a.n, "i": list(i_set.elements), "j": list(j_set.elements)})
    rhs = {"theorem": rhs_main, "corollary": rhs_single}
    return CheckReport("cauchy-binet-pfaffian", inst, lhs, rhs,
                       lhs == rhs_main and rhs_main == rhs_single)


def check_null_relations(a: SkewMatrix, i_set: IndexSet, j_set: IndexSet,
                         pf: Optional[dict[int, Scalar]] = None,
                         instance: Optional[dict] = None) -> CheckReport:
    """Vanishing bilinear Pfaffian sums for unequal-cardinality labels."""
    if len(i_set) == len(j_set) or (len(i_set) + len(j_set)) % 2:
        raise CardinalityMismatchError("need |I| != |J| with even total")
    if pf is None:
        pf = principal_pfaffians(a)
    total: Scalar = 0
    for k_set, l_set in compatible_even_pairs(i_set, j_set):
        pf_kl = pf[k_set.mask] * pf[l_set.mask]
        if pf_kl == 0:
            continue
        dec = decompose_abcds(i_set, j_set, k_set, l_set)
        sgn = signed_perm_sign(i_set, j_set, k_set, l_set)
        total += (-1) ** (len(l_set) // 2 + dec.b) * sgn * pf_kl
    inst = dict(instance or {})
    inst.update({"n": a.n, "i": list(i_set.elements), "j": list(j_set.elements)})
    return CheckReport("null-relations", inst, total, 0, total == 0)


def check_main_theorem(f: Frame, instance: Optional[dict] = None) -> CheckReport:
    """Grade-N bilinear form of the spinor image against the Plucker image.

    Evaluates the grade-N form on the C-image pair: the coefficient at a
    monomial sigma is (Gamma_sigma C c, c) for c the spinor image.  The
    result must be projectively equal to the wedge of the frame columns.
    """
    if not is_isotropic(f):
        raise NotIsotropicError("frame is not isotropic")
    c = cartan_image(f)
    twisted = c_operator(c)
    lhs = beta_form(twisted, twisted, f.n)
    rhs = plucker_nform(f)
    inst = dict(instance or {})
    inst.update({"n": f.n})
    return CheckReport("main-theorem", inst, lhs, rhs, projective_equal(lhs, rhs))


def _kappa_lookup(kappa: dict[StrictPartition, Scalar], n: int) -> Callable[[StrictPartition], Scalar]:
    def get(label: StrictPartition) -> Scalar:
        if label.parts and label.parts[0] > n - 1:
            return 0
        return kappa.get(label, 0)

    return get


def check_cartan_relations(a: SkewMatrix, alpha: StrictPartition, beta: StrictPartition,
                           kappa: Optional[dict[StrictPartition, Scalar]] = None,
                           instance: Optional[dict] = None) -> CheckReport:
    """Quadratic label-surgery relations among the Pfaffian coordinates.

    Insertions clashing with an existing part contribute nothing; labels
    outside the admissible range or of the wrong length parity read as 0.
    """
    n = a.n
    for label in (alpha, beta):
        if label.parts and label.parts[0] > n - 1:
            raise PartRangeError(f"parts of {label} must be <= {n - 1}")
    if kappa is None:
        kappa = cartan_big_cell(a).values
    kval = _kappa_lookup(kappa, n)

    def one_sum(x: StrictPartition, y: StrictPartition) -> Scalar:
        total: Scalar = 0
        for i in range(1, x.length + 1):
            removed, part = strict_remove(x, i)
            if part in y.parts:
                continue
            inserted, _ = strict_insert(y, part)
            term = kval(removed) * kval(inserted)
            if term == 0:
                continue
            sign = (-1) ** (i + count_greater(y, part))
            total += sign * term
        return total

    lhs = one_sum(alpha, beta) + one_sum(beta, alpha)
    parity = (-1) ** (alpha.length + beta.length)
    rhs = Fraction(parity - 1, 2) * kval(alpha) * kval(beta)
    inst = dict(instance or {})
    inst.update({"n": n, "alpha": list(alpha.parts), "beta": list(beta.parts)})
    return CheckReport("cartan-relations", inst, lhs, rhs, lhs == rhs)


def check_cartan_quadric(f: Frame, k: int, instance: Optional[dict] = None) -> CheckReport:
    """Vanishing of the grade-k bilinear form on the spinor image."""
    c = cartan_image(f)
    val = beta_form(c, c, k)
    zero = (val == 0) if k == 0 else val.is_zero()
    inst = dict(instance or {})
    inst.update({"n": f.n, "k": k})
    return CheckReport("cartan-quadrics", inst, val, 0, zero)


def quadric_grades(n: int) -> list[int]:
    """The grades below n whose bilinear form cuts out the spinor variety."""
    return [k for k in range(n) if (n - k) % 4 == 0]


def check_plucker_relations(f: Frame, instance: Optional[dict] = None) -> CheckReport:
    """Exchange-form quadratic relations among all maximal minors.

    For every (N-1)-subset R and (N+1)-subset S of the row labels the
    alternating exchange sum of minor products must vanish.
    """
    n = f.n
    dets: dict[tuple[int, ...], Scalar] = {}
    for combo in itertools.combinations(range(1, 2 * n + 1), n):
        dets[combo] = det_exact(select(f.w, combo, range(1, n + 1)))
    first_bad = None
    bad_value: Scalar = 0
    checked = 0
    for r_rows in itertools.combinations(range(1, 2 * n + 1), n - 1):
        r_set = set(r_rows)
        for s_rows in itertools.combinations(range(1, 2 * n + 1), n + 1):
            total: Scalar = 0
            for k, s in enumerate(s_rows):
                if s in r_set:
                    continue
                ins_sign = (-1) ** sum(1 for x in r_rows if x > s)
                left = dets[tuple(sorted(r_rows + (s,)))]
                right = dets[tuple(x for x in s_rows if x != s)]
                total += (-1) ** k * ins_sign * left * right
            checked += 1
            if total != 0 and first_bad is None:
                first_bad = {"r": list(r_rows), "s": list(s_rows)}
                bad_value = total
    inst = dict(instance or {})
    inst.update({"n": n, "instances": checked})
    if first_bad is not None:
        inst["first_failure"] = first_bad
    return CheckReport("plucker-relations", inst, bad_value, 0, first_bad is None)


def check_giambelli(f: Frame, lam: Partition,
                    coords: Optional[PluckerCoordinates] = None,
                    instance: Optional[dict] = None) -> CheckReport:
    """Minor at a label as a determinant in its Frobenius hook minors."""
    coords = coords or plucker_coordinates(f)
    base = coords.value(Partition(()))
    if base == 0:
        raise NotInBigCellError("vacuum coordinate vanishes")
    fro = frobenius_split(lam)
    r = fro.rank
    hook_grid = [[coords.value(Partition((fro.alpha.parts[i] + 1,) + (1,) * fro.beta.parts[j]))
                  for j in range(r)] for i in range(r)]
    rhs = det_exact(Matrix.from_rows(hook_grid)) if r else 1
    lhs = Fraction(coords.value(lam), base) if r == 0 else base ** (r - 1) * coords.value(lam)
    inst = dict(instance or {})
    inst.update({"n": f.n, "lambda": list(lam.parts)})
    return CheckReport("giambelli", inst, lhs, rhs, lhs == rhs)


def check_wedge_power_replay(a: SkewMatrix, r: int,
                             instance: Optional[dict] = None) -> CheckReport:
    """Two expansions of the r-th power of the mixed-basis 2-form.

    The 2-form sum(A_kl g_k ^ h_l) has its power expanded once over
    determinant-weighted g/h monomials (converted to the e/f basis
    through the bracket expansion) and once through the binomial
    Pfaffian form; the direct wedge power arbitrates.
    """
    n = a.n
    if not 1 <= r <= n:
        raise PartRangeError(f"power {r} outside 1..{n}")
    two_n = 2 * n

    def g_vec(i: int) -> Multivector:
        return Multivector(two_n, {1 << (i - 1): 1, 1 << (n + i - 1): 1})

    def h_vec(i: int) -> Multivector:
        return Multivector(two_n, {1 << (i - 1): 1, 1 << (n + i - 1): -1})

    omega = Multivector.zero(two_n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            c = a.entry(i, j)
            if c != 0:
                omega = omega + wedge(g_vec(i), h_vec(j)).scale(c)
    direct = wedge_power(omega, r)

    fact_r = 1
    for m in range(2, r + 1):
        fact_r *= m
    sign_r = (-1) ** (r * (r - 1) // 2)

    gh_route = Multivector.zero(two_n)
    for i_rows in itertools.combinations(range(1, n + 1), r):
        for j_cols in itertools.combinations(range(1, n + 1), r):
            minor = det_exact(submatrix(a.mat, i_rows, j_cols))
            if minor == 0:
                continue
            i_set = IndexSet.of(i_rows, n)
            j_set = IndexSet.of(j_cols, n)
            union = i_set | j_set
            inter = i_set & j_set
            expansion = Multivector.zero(two_n)
            free = (union - inter).mask
            sub = 0
            while True:
                k_set = IndexSet(inter.mask | sub, n)
                l_set = partner_set(i_set, j_set, k_set)
                d = delta_bracket(i_set, j_set, k_set, l_set, mode="oracle")
                if d != 0:
                    expansion = expansion + Multivector(
                        two_n, {ef_key(n, k_set.elements, l_set.elements): d})
                if sub == free:
                    break
                sub = (sub - free) & free
            gh_route = gh_route + expansion.scale(minor)
    gh_route = gh_route.scale(sign_r * fact_r)

    pf = principal_pfaffians(a)
    binom = Multivector.zero(two_n)
    for k_card in range(0, 2 * r + 1, 2):
        l_card = 2 * r - k_card
        if l_card < 0 or l_card % 2 or k_card > n or l_card > n:
            continue
        for k_rows in itertools.combinations(range(1, n + 1), k_card):
            k_mask = sum(1 << (e - 1) for e in k_rows)
            pk = pf[k_mask]
            if pk == 0:
                continue
            for l_rows in itertools.combinations(range(1, n + 1), l_card):
                l_mask = sum(1 << (e - 1) for e in l_rows)
                pl = pf[l_mask]
                if pl == 0:
                    continue
                coeff = (-1) ** (l_card // 2) * pk * pl
                binom = binom + Multivector(two_n, {ef_key(n, k_rows, l_rows): coeff})
    binom = binom.scale(fact_r << r)

    inst = dict(instance or {})
    inst.update({"n": n, "r": r, "direct_matches": gh_route == direct})
    return CheckReport("wedge-replay", inst, gh_route, binom,
                       gh_route == binom and gh_route == direct)


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def suite_cauchy_binet(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    reports = []
    for t in range(trials):
        a = random_skew(n, _trial_seed(seed, t), bound)
        pf = principal_pfaffians(a)
        inst = {"seed": seed, "trial": t}
        for r in range(n + 1):
            for i_rows in itertools.combinations(range(1, n + 1), r):
                for j_cols in itertools.combinations(range(1, n + 1), r):
                    reports.append(check_cauchy_binet_pfaffian(
                        a, IndexSet.of(i_rows, n), IndexSet.of(j_cols, n), pf, inst))
    return reports


def suite_null_relations(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    reports = []
    for t in range(trials):
        a = random_skew(n, _trial_seed(seed, t), bound)
        pf = principal_pfaffians(a)
        inst = {"seed": seed, "trial": t}
        for ci in range(n + 1):
            for cj in range(n + 1):
                if ci == cj or (ci + cj) % 2:
                    continue
                for i_rows in itertools.combinations(range(1, n + 1), ci):
                    for j_cols in itertools.combinations(range(1, n + 1), cj):
                        reports.append(check_null_relations(
                            a, IndexSet.of(i_rows, n), IndexSet.of(j_cols, n), pf, inst))
    return reports


def suite_main_theorem(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    reports = [check_main_theorem(v_frame(n), {"point": "base"}),
               check_main_theorem(tilde_v_frame(n), {"point": "opposite"})]
    for t in range(trials):
        f = random_big_cell_frame(n, _trial_seed(seed, t), bound)
        reports.append(check_main_theorem(f, {"seed": seed, "trial": t}))
    return reports


def suite_cartan_relations(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    labels = [a for a in strict_partitions_bounded(n - 1)]
    reports = []
    for t in range(trials):
        a = random_skew(n, _trial_seed(seed, t), bound)
        kappa = cartan_big_cell(a).values
        inst = {"seed": seed, "trial": t}
        for alpha in labels:
            for beta in labels:
                reports.append(check_cartan_relations(a, alpha, beta, kappa, inst))
    return reports


def suite_quadrics(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    grades = quadric_grades(n)
    reports = []
    for t in range(trials):
        f = random_big_cell_frame(n, _trial_seed(seed, t), bound)
        inst = {"seed": seed, "trial": t}
        if not grades:
            report = CheckReport("cartan-quadrics", {**inst, "n": n, "k": None, "note": "vacuous"},
                                 0, 0, True)
            reports.append(report)
            continue
        for k in grades:
            reports.append(check_cartan_quadric(f, k, inst))
    return reports


def suite_plucker_relations(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    reports = []
    for t in range(trials):
        f = random_frame(n, _trial_seed(seed, t), bound)
        reports.append(check_plucker_relations(f, {"seed": seed, "trial": t}))
    return reports


def suite_giambelli(n: int, trials: int, seed: int, bound: int = 9,
                    max_rank: int = 3) -> list[CheckReport]:
    reports = []
    for t in range(trials):
        f = random_big_cell_frame(n, _trial_seed(seed, t), bound)
        coords = plucker_coordinates(f)
        inst = {"seed": seed, "trial": t}
        for lam in box_partitions(n):
            if frobenius_split(lam).rank <= max_rank:
                reports.append(check_giambelli(f, lam, coords, inst))
    return reports


def suite_wedge_replay(n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    reports = []
    for t in range(trials):
        a = random_skew(n, _trial_seed(seed, t), bound)
        for r in range(1, n + 1):
            reports.append(check_wedge_power_replay(a, r, {"seed": seed, "trial": t}))
    return reports


SUITES: dict[str, Callable[[int, int, int, int], list[CheckReport]]] = {
    "cauchy-binet": suite_cauchy_binet,
    "main-theorem": suite_main_theorem,
    "cartan-relations": suite_cartan_relations,
    "plucker-relations": suite_plucker_relations,
    "giambelli": suite_giambelli,
    "quadrics": suite_quadrics,
    "wedge-replay": suite_wedge_replay,
}


def run_suite(which: str, n: int, trials: int, seed: int, bound: int = 9) -> list[CheckReport]:
    if which == "all":
        out = []
        for name in SUITES:
            out.extend(SUITES[name](n, trials, seed, bound))
        return out
    if which not in SUITES:
        raise ValueError(f"unknown suite {which!r}")
    return SUITES[which](n, trials, seed, bound)
