import random

import pytest

from dworkzeta.charsums import MultChar, char_of_order
from dworkzeta.counting import count_dwork, count_hyper, count_mirror
from dworkzeta.errors import CongruenceViolated, OrderMismatch, SpecialClass
from dworkzeta.ffield import build_field, subfield_embed
from dworkzeta.formulas import (
    N_class,
    N_hyper_formula,
    beta,
    build_hyper_from_class,
    decompose,
    dwork_count_formula,
    lambda_of_psi,
    link_check,
    trivial_part,
)
from dworkzeta.orbits import canonical, enumerate_classes
from dworkzeta.varieties import HyperVariety

from oracles import dwork_affine_prime, hyper_affine_prime


def _rec(n, s):
    return {r.rep: r for r in enumerate_classes(n)}[canonical(s, n)]


def _zero_sum_tuples(n, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        head = [rng.randrange(n) for _ in range(n - 1)]
        yield tuple(head) + ((-sum(head)) % n,)


def test_beta_full_class_is_q_power(F11, F31):
    for F in (F11, F31):
        chi = char_of_order(F, 5)
        for e in range(F.q - 1):
            b = beta((0, 1, 2, 3, 4), chi, MultChar(F, e))
            assert abs(b.value.value - F.q ** 2) < 1e-7


def test_beta_forms_agree_everywhere_n5(F11):
    chi = char_of_order(F11, 5)
    for s in _zero_sum_tuples(5, 60, 1):
        for e in range(10):
            b = beta(s, chi, MultChar(F11, e))
            assert b.z + b.delta == 1 + b.nu


def test_beta_compatibility(F31):
    chi = char_of_order(F31, 5)
    rng = random.Random(3)
    for s in _zero_sum_tuples(5, 25, 2):
        e = rng.randrange(30)
        eta = MultChar(F31, e)
        v = beta(s, chi, eta).value.value
        perm = list(s)
        rng.shuffle(perm)
        assert abs(beta(tuple(perm), chi, eta).value.value - v) < 1e-8 * max(1, abs(v))
        j = rng.randrange(5)
        lhs = beta(tuple((x + j) % 5 for x in s), chi, eta).value.value
        rhs = beta(s, chi, chi ** j * eta).value.value
        assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))
        k = rng.randrange(1, 5)
        lhs = beta(tuple(k * x % 5 for x in s), chi, eta).value.value
        rhs = beta(s, chi ** k, eta).value.value
        assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))


def test_beta_rejects_wrong_order(F11):
    with pytest.raises(OrderMismatch):
        beta((0, 0, 0, 1, 4), MultChar(F11, 1), MultChar(F11, 0))


@pytest.mark.parametrize("psi", range(1, 11))
def test_formula_matches_naive_count_n5_q11(F11, psi):
    affine = dwork_affine_prime(11, 5, psi)
    assert dwork_count_formula(F11, 5, psi) == (affine - 1) // 10


def test_formula_matches_count_q31_and_f121(F31, F121, F11):
    for psi in (2, 5, 17):
        assert dwork_count_formula(F31, 5, psi) == count_dwork(F31, 5, psi).projective
    assert dwork_count_formula(F121, 5, subfield_embed(F11, F121, 2)) == 1969300


def test_formula_requires_congruence():
    with pytest.raises(CongruenceViolated):
        dwork_count_formula(build_field(13), 5, 2)


def test_special_class_terms(F11):
    chi = char_of_order(F11, 5)
    recs = enumerate_classes(5)
    zero, full = recs[0], recs[1]
    for psi in (2, 6, 7):
        assert N_class(zero, chi, psi).value == count_mirror(F11, 5, psi).projective - trivial_part(11, 5)
        t = N_class(full, chi, psi)
        assert t.value == 0 and abs(t.bracket.value) < 1e-8
    t = N_class(full, chi, 1)
    assert abs(t.bracket.value - 11 ** 2) < 1e-8
    assert t.value == 24 * 11 ** 2


def test_N_class_independent_of_chi(F31):
    for rec in enumerate_classes(5):
        vals = {N_class(rec, char_of_order(F31, 5, a), 7).value for a in range(1, 5)}
        assert len(vals) == 1


def test_build_hyper_equations(F11):
    recs = enumerate_classes(5)
    eqs = [build_hyper_from_class(r, 2, F11).hypersurface().equation() for r in recs[2:]]
    assert eqs == ["y^5 = x^2(1-x)^3(1-λx)^2", "y^5 = x^2(1-x)^4(1-λx)"]
    t1p = _rec(7, (0, 0, 0, 0, 0, 1, 6))
    assert t1p.hyper.hypersurface().equation() == "y^7 = x1^2x2^5x3^3(1-x1)^5(1-x2)^2(1-x3)^4(1-λx1x2x3)^3"
    with pytest.raises(SpecialClass):
        build_hyper_from_class(recs[0], 2, F11)


@pytest.mark.parametrize("n,p", [(5, 11), (5, 31), (7, 29)])
def test_hyper_formula_matches_count(n, p):
    F = build_field(p)
    lam = lambda_of_psi(F, n, 3)
    for rec in enumerate_classes(n):
        if rec.is_special:
            continue
        H = rec.hyper.with_lambda(lam)
        assert N_hyper_formula(F, H).predicted == count_hyper(F, H).affine


def test_hyper_formula_without_complete_pairing(F11):
    # exponents with no pairing structure: only the general Gauss form applies
    H = HyperVariety(5, 2, 3, (2, 3, 4), (1, 3), lam=3)
    assert not H.complete_pairing
    want = hyper_affine_prime(11, 5, 2, 3, H.alphas, H.betas, 3)
    assert N_hyper_formula(F11, H).predicted == want


def test_hyper_formula_trivial_denominator_branch(F11):
    # beta_1 = alpha_2 = 5: the characters chi^beta eta hit the trivial one at eta = 1
    H = HyperVariety(5, 2, 2, (5, 5), (5, 5), lam=4)
    want = hyper_affine_prime(11, 5, 2, 2, H.alphas, H.betas, 4)
    assert N_hyper_formula(F11, H).predicted == want


def test_link_examples(F11, F29):
    for rec, weight in zip(enumerate_classes(5)[2:], (10, 15)):
        L = link_check(rec, 2, F11)
        assert (L.weight, L.q_exponent, L.residual < 1e-6) == (weight, 1, True)
        assert L.N_class == weight * 11 * L.N_lam
    L = link_check(_rec(7, (0, 0, 0, 0, 1, 2, 4)), 3, F29)
    assert (L.weight, L.q_exponent) == (70, 1) and L.N_class == 70 * 29 * L.N_lam
    L = link_check(_rec(7, (0, 0, 0, 1, 1, 2, 3)), 3, F29)
    assert L.weight == 420 and L.N_class == 420 * 29 * L.N_lam


def test_q_power_dimension_relation():
    for n in (5, 7, 11):
        for r in enumerate_classes(n):
            if not r.is_special:
                assert (n + 1 - (2 * r.m - r.mprime)) == (n - r.d - 2)


def test_decompose_n5(F11):
    rep = decompose(F11, 5, 2, count_varieties=True)
    assert rep.ok and rep.formula_total == rep.brute_force_total == 2550
    assert rep.N_mirror_formula == rep.N_mirror_count == -14
    assert [(r.weight, r.q_exponent, r.N_lam) for r in rep.rows] == [(10, 1, -8), (15, 1, 12)]
    q = 11
    assert rep.formula_total == 1 + q + q * q + q ** 3 - 14 + 10 * q * (-8) + 15 * q * 12
    assert set(rep.by_dimension) == {1}
    d = rep.to_dict()
    assert d["ok"] and d["rows"][0]["rep"] == [0, 0, 0, 1, 4]


def test_decompose_singular(F11):
    rep = decompose(F11, 5, 1)
    assert rep.singular and rep.singular_term_formula == 2904
    assert rep.formula_total == rep.brute_force_total


@pytest.mark.slow
def test_decompose_n7(F29):
    rep = decompose(F29, 7, 3)
    assert rep.ok and rep.formula_total == rep.brute_force_total == 21637959
    assert set(rep.by_dimension) == {1, 3}
    assert rep.max_rounding_residual < 1e-6
