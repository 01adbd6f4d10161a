import itertools
import random
from fractions import Fraction

import pytest

from spinor_grass.exterior import (
    AmbientMismatchError,
    GradeOutOfRangeError,
    Multivector,
    RepeatedFactorError,
    apply_annihilate,
    apply_create,
    basis_seq,
    beta0,
    beta_form,
    c_operator,
    e_desc,
    ef_key,
    f_wedge_star_e,
    gamma_linear,
    gamma_monomial,
    gamma_nform,
    gamma_vector,
    hodge_star,
    lift,
    multivector_from_json,
    multivector_to_json,
    nform_basis,
    scalar_product,
    star_e_desc,
    volume,
    wedge,
    wedge_power,
)
from spinor_grass.indexsets import IndexSet, delta_bracket, partner_set, split_sign
from spinor_grass.partitions import (
    box_partitions,
    frobenius_split,
    rect_complement,
)


def random_mv(n, rng, lo=-4, hi=4):
    return Multivector(n, {mask: rng.randint(lo, hi) for mask in range(1 << n)})


def all_index_sets(n):
    for r in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), r):
            yield IndexSet.of(combo, n)


def test_multivector_basics():
    v = Multivector(3, {0b011: 2, 0b100: 0})
    assert v.coeff([1, 2]) == 2 and v.coeff([3]) == 0
    assert v.grades() == [2]
    assert (v - v).is_zero()
    with pytest.raises(AmbientMismatchError):
        v + Multivector.zero(2)
    with pytest.raises(AmbientMismatchError):
        Multivector(2, {0b100: 1})


def test_gamma_linear_examples():
    one = Multivector.scalar(3, 1)
    assert gamma_linear(("e", 1), one) == Multivector.basis(3, [1])
    e12 = Multivector.basis(3, [1, 2])
    assert gamma_linear(("f", 1), e12) == Multivector.basis(3, [2])
    # g and h are the sum and difference actions
    v = Multivector.basis(3, [2])
    assert gamma_linear(("g", 1), v) == apply_create(v, 1) + apply_annihilate(v, 1)
    assert gamma_linear(("h", 1), v) == apply_create(v, 1) - apply_annihilate(v, 1)


def test_anticommutation_relations():
    rng = random.Random(0)
    for n in range(1, 7):
        v = random_mv(n, rng)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                ee = gamma_linear(("e", i), gamma_linear(("e", j), v)) \
                    + gamma_linear(("e", j), gamma_linear(("e", i), v))
                ff = gamma_linear(("f", i), gamma_linear(("f", j), v)) \
                    + gamma_linear(("f", j), gamma_linear(("f", i), v))
                ef = gamma_linear(("e", i), gamma_linear(("f", j), v)) \
                    + gamma_linear(("f", j), gamma_linear(("e", i), v))
                assert ee.is_zero() and ff.is_zero()
                assert ef == (v if i == j else Multivector.zero(n))


def test_hodge_star_cases():
    for n in range(1, 6):
        assert hodge_star(Multivector.scalar(n, 1)) == volume(n)
        assert hodge_star(volume(n)) == Multivector.scalar(n, 1)
        for mask in range(1 << n):
            b = Multivector.basis(n, mask)
            r = bin(mask).count("1")
            assert hodge_star(hodge_star(b)) == b.scale((-1) ** (r * (n - r)))


def test_hodge_star_decreasing_convention():
    # *(e_I in decreasing order) = split_sign(I) e_{complement, decreasing}
    for n in range(1, 6):
        for i_set in all_index_sets(n):
            got = hodge_star(e_desc(n, i_set))
            expect = e_desc(n, i_set.complement()).scale(split_sign(i_set, "decreasing"))
            assert got == expect, (n, i_set)


def test_c_operator_fixtures():
    assert c_operator(Multivector.basis(2, [1])) == Multivector.basis(2, [2])
    assert c_operator(Multivector.basis(2, [1, 2])) == Multivector.scalar(2, -1)
    assert c_operator(Multivector.basis(3, [1, 2])) == Multivector.basis(3, [3]).scale(-1)


def test_c_operator_square_and_invariance():
    rng = random.Random(1)
    for n in range(1, 7):
        sign = (-1) ** (n * (n + 1) // 2)
        for mask in range(1 << n):
            b = Multivector.basis(n, mask)
            assert c_operator(c_operator(b)) == b.scale(sign)
            r = bin(mask).count("1")
            assert c_operator(b) == hodge_star(b).scale((-1) ** (r * (r - 1) // 2 + r * n))
        v, w = random_mv(n, rng), random_mv(n, rng)
        assert scalar_product(c_operator(v), c_operator(w)) == scalar_product(v, w)


def test_scalar_product_orthonormal_and_bilinear():
    n = 4
    for mask in range(1 << n):
        assert scalar_product(Multivector.basis(n, mask), Multivector.basis(n, mask)) == 1
    assert scalar_product(Multivector.basis(n, [1]), Multivector.basis(n, [2])) == 0
    rng = random.Random(2)
    u, v, w = (random_mv(n, rng) for _ in range(3))
    assert scalar_product(u + v.scale(3), w) == scalar_product(u, w) + 3 * scalar_product(v, w)


def test_gamma_monomial_single_and_disjoint():
    rng = random.Random(3)
    n = 4
    v = random_mv(n, rng)
    for kind in "efgh":
        assert gamma_monomial([(kind, 2)], v) == gamma_linear(("e" if False else kind, 2), v)
    # pairwise-disjoint indices collapse to the plain ordered product
    factors = [("e", 1), ("f", 3), ("e", 4)]
    direct = v
    for f in reversed(factors):
        direct = gamma_linear(f, direct)
    assert gamma_monomial(factors, v) == direct


def test_gamma_monomial_modes_agree():
    rng = random.Random(4)
    done = 0
    while done < 60:
        n = rng.randint(1, 5)
        m = rng.randint(1, min(6, 2 * n))
        pool = [(k, i) for k in "efgh" for i in range(1, n + 1)]
        rng.shuffle(pool)
        factors = pool[:m]
        v = random_mv(n, rng)
        assert gamma_monomial(factors, v, "naive") == gamma_monomial(factors, v, "fastpath")
        done += 1


def test_gamma_monomial_errors():
    v = Multivector.scalar(2, 1)
    with pytest.raises(RepeatedFactorError):
        gamma_monomial([("e", 1), ("e", 1)], v)
    with pytest.raises(GradeOutOfRangeError):
        gamma_monomial([("e", 1), ("f", 1), ("e", 2), ("f", 2), ("g", 1)], v)
    with pytest.raises(AmbientMismatchError):
        gamma_monomial([("e", 3)], v)


def test_beta0_volume():
    for n in range(1, 6):
        om = volume(n)
        assert beta0(om, om) == scalar_product(om, c_operator(om))
        c = c_operator(om)
        assert c.grades() == [0]


def test_beta_form_bilinearity_and_grades():
    rng = random.Random(5)
    n = 3
    u, v, w = (random_mv(n, rng) for _ in range(3))
    b1 = beta_form(u + v.scale(2), w, n)
    b2 = beta_form(u, w, n) + beta_form(v, w, n).scale(2)
    assert b1 == b2
    with pytest.raises(GradeOutOfRangeError):
        beta_form(u, w, 2 * n + 1)
    assert beta_form(u, w, 0) == beta0(u, w)


def test_canonical_point_pairings():
    # pairing the first canonical point: nonzero only at the empty labels
    for n in (2, 3, 4):
        om = volume(n)
        one = Multivector.scalar(n, 1)
        for r in range(n + 1):
            for i_rows in itertools.combinations(range(1, n + 1), r):
                for j_rows in itertools.combinations(range(1, n + 1), r):
                    sig = f_wedge_star_e(n, IndexSet.of(i_rows, n), IndexSet.of(j_rows, n))
                    val = scalar_product(gamma_nform(sig, one), om)
                    assert val == (1 if r == 0 else 0)
    # second canonical point: nonzero only at the singleton top labels
    for n in (2, 3, 4):
        e_n = Multivector.basis(n, [n])
        rest = Multivector.basis(n, list(range(1, n)))
        for r in range(n + 1):
            for i_rows in itertools.combinations(range(1, n + 1), r):
                for j_rows in itertools.combinations(range(1, n + 1), r):
                    sig = f_wedge_star_e(n, IndexSet.of(i_rows, n), IndexSet.of(j_rows, n))
                    val = scalar_product(gamma_nform(sig, e_n), rest)
                    expect = 1 if (i_rows == (n,) and j_rows == (n,)) else 0
                    assert val == expect


def delta_hat(n, i_set, j_set, k_set, l_set):
    # all sets ascending, matching the single-sum section's convention
    sig = f_wedge_star_e(n, i_set, j_set)
    return scalar_product(gamma_nform(sig, Multivector.basis(n, k_set.mask)),
                          hodge_star(Multivector.basis(n, l_set.mask)))


def test_delta_hat_ratio_lemma():
    for n in (1, 2, 3):
        for i_set in all_index_sets(n):
            for j_set in all_index_sets(n):
                if len(i_set) != len(j_set):
                    continue
                r = len(i_set)
                inter = i_set & j_set
                free = (i_set | j_set) - inter
                for k in range(len(free) + 1):
                    for extra in itertools.combinations(free.elements, k):
                        k_set = IndexSet.of(list(inter.elements) + list(extra), n)
                        l_set = partner_set(i_set, j_set, k_set)
                        if len(k_set) % 2 or len(l_set) % 2:
                            continue
                        hat = delta_hat(n, i_set, j_set, k_set, l_set)
                        dl = delta_bracket(i_set, j_set, k_set, l_set, "closed")
                        assert hat == Fraction((-1) ** (r * (r - 1) // 2), 2 ** r) * dl
                        assert (hat != 0) == (dl != 0)


def test_gh_change_of_basis():
    # g_I ^ h_J expands over the bracket-weighted e/f monomials
    def g_vec(n, i):
        return Multivector(2 * n, {1 << (i - 1): 1, 1 << (n + i - 1): 1})

    def h_vec(n, i):
        return Multivector(2 * n, {1 << (i - 1): 1, 1 << (n + i - 1): -1})

    for n in (1, 2, 3):
        for i_set in all_index_sets(n):
            for j_set in all_index_sets(n):
                lhs = Multivector.scalar(2 * n, 1)
                for i in i_set.elements:
                    lhs = wedge(lhs, g_vec(n, i))
                for j in j_set.elements:
                    lhs = wedge(lhs, h_vec(n, j))
                rhs = Multivector.zero(2 * n)
                inter = i_set & j_set
                free = (i_set | j_set) - inter
                for k in range(len(free) + 1):
                    for extra in itertools.combinations(free.elements, k):
                        k_set = IndexSet.of(list(inter.elements) + list(extra), n)
                        l_set = partner_set(i_set, j_set, k_set)
                        d = delta_bracket(i_set, j_set, k_set, l_set, "oracle")
                        if d:
                            rhs = rhs + Multivector(
                                2 * n, {ef_key(n, k_set.elements, l_set.elements): d})
                assert lhs == rhs


def test_position_basis_vs_spinor_monomial():
    # e_{l_1} ^ ... ^ e_{l_N} = split_sign(I(beta')) f_{I(alpha)} ^ *e_{I(beta')}
    for n in range(1, 5):
        for lam in box_partitions(n):
            fro = frobenius_split(lam)
            bprime = rect_complement(fro.beta, n)
            sig = f_wedge_star_e(n, fro.alpha.index_set(n), bprime.index_set(n))
            s = split_sign(bprime.index_set(n), "decreasing")
            assert nform_basis(n, lam) == sig.scale(s)


def test_wedge_properties():
    rng = random.Random(6)
    n = 6
    a = Multivector.basis(n, [2])
    b = Multivector.basis(n, [5])
    assert wedge(a, b) == wedge(b, a).scale(-1)
    u = Multivector(n, {0b000011: 2, 0b001100: -1})
    v = Multivector(n, {0b110000: 3})
    w = Multivector(n, {0b000001: 1, 0b100000: 1})
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))
    assert wedge_power(u, 0) == Multivector.scalar(n, 1)


def test_basis_seq_and_lift():
    assert basis_seq(3, (2, 1)) == Multivector.basis(3, [1, 2]).scale(-1)
    assert basis_seq(3, (1, 1)).is_zero()
    v = Multivector.basis(2, [1])
    assert lift(v, 4).ambient == 4
    with pytest.raises(AmbientMismatchError):
        lift(lift(v, 4), 2)


def test_gamma_vector_matches_linear_combination():
    rng = random.Random(7)
    n = 3
    v = random_mv(n, rng)
    coeffs = [rng.randint(-3, 3) for _ in range(2 * n)]
    direct = Multivector.zero(n)
    for p, c in enumerate(coeffs):
        if c == 0:
            continue
        kind = ("e", p + 1) if p < n else ("f", p - n + 1)
        direct = direct + gamma_linear(kind, v).scale(c)
    assert gamma_vector(coeffs, v) == direct


def test_star_e_desc_matches_split_sign():
    n = 4
    i_set = IndexSet.of([2, 4], n)
    got = star_e_desc(n, i_set)
    expect = e_desc(n, i_set.complement()).scale(split_sign(i_set, "decreasing"))
    assert got == expect


def test_multivector_json_round_trip():
    v = Multivector(3, {0b101: Fraction(2, 3), 0b010: -4})
    assert multivector_from_json(multivector_to_json(v)) == v
    blob = multivector_to_json(v)
    assert blob["terms"][0]["key"] == [2]  # graded-lex order
