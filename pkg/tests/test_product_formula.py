import random

import pytest

from tamek2.product_formula import (
    a2_minus_32b2_valid,
    base_symbols,
    composite_element,
    direct_symbol,
    prime_symbol_check,
    hplus_representation_test,
    base_symbol_criteria,
    minus_one_exponent,
    pinned_a2_minus_32b2,
    product_formula_symbol,
    composite_symbol_check,
    cofactor_symbol,
    shifted_element,
    symbol_over_ideal,
)
from tamek2.arith import Factorization, hilbert_symbol, sieve_primes
from tamek2.errors import ConditionNotMet, InvalidArgument, NotApplicable, NotCoprime
from tamek2.verify import two_prime_closed_forms, random_admissible
from tamek2.zsqrt2 import FUND_UNIT, QuadInt, represent_prime, residue_mod_ideal

PM1 = [p for p in sieve_primes(3000) if p % 8 in (1, 7)]


def test_base_symbols_small_primes():
    bs = base_symbols(17)
    assert (bs.s_minus1, bs.s_two) == (-1, 1)
    bs = base_symbols(41)
    assert (bs.s_minus1, bs.s_two) == (1, -1)


def test_shifted_element_residue_identity():
    # u_r + w_r = y (3 + 2 sqrt2) pi_r modulo the ideal, so both symbols agree
    for l in PM1[:60]:
        rep = represent_prime(l)
        for z in (FUND_UNIT, QuadInt(2, 1), QuadInt(5, 2), QuadInt(1, 2)):
            s = shifted_element(z, rep)
            assert s.trace_sum() % l == residue_mod_ideal(QuadInt(3 * rep.y, 2 * rep.y) * z, rep)


def test_composite_element_norm():
    for fac in [Factorization.from_parts(1, 1, [7, 41]), Factorization.from_parts(0, 0, [17, 23]), Factorization.from_parts(1, 0, [])]:
        assert composite_element(fac).norm() == fac.value


def test_minus_one_exponent():
    assert [minus_one_exponent(n, p) for n in (0, 1) for p in (17, 7)] == [1, 0, 0, 1]


def test_product_formula_against_direct_symbols():
    rng = random.Random(2024)
    primes = PM1
    for _ in range(300):
        fac = random_admissible(rng, 10**7, primes)
        for k in range(fac.t):
            f = product_formula_symbol(fac, k)
            assert f == direct_symbol(fac, k) == cofactor_symbol(fac, k), (fac.value, k)


def test_direct_symbol_is_the_hilbert_symbol():
    fac = Factorization.from_parts(0, 0, [17, 41, 73])
    assert [direct_symbol(fac, k) for k in range(3)] == [hilbert_symbol(-50881, 785, p) for p in (17, 41, 73)]


def test_two_prime_closed_forms():
    for p, l in [(7, 17), (23, 41), (41, 73), (89, 17)]:
        for label, formula, closed in two_prime_closed_forms(p, l):
            assert formula == closed, (p, l, label)


@pytest.mark.parametrize("r,l", [(7 * 41, 17), (-14, 41), (-1, 17), (2 * 7 * 23, 73), (-31, 97)])
def test_composite_symbol(r, l):
    assert composite_symbol_check(r, l)


def test_composite_symbol_rejects_l_dividing_r():
    with pytest.raises(InvalidArgument):
        composite_symbol_check(17 * 7, 17)


def test_base_symbol_criteria_small():
    for l in PM1:
        assert base_symbol_criteria(l) == (True, True), l


def test_pinned_vs_plain_a2_minus_32b2():
    # the two agree when l = 1 mod 8
    for l in [p for p in PM1 if p % 8 == 1]:
        assert pinned_a2_minus_32b2(l) == a2_minus_32b2_valid(l)
    # for l = 7 mod 8 the plain condition cannot separate the two ideals above l
    mismatches = [l for l in PM1 if l % 8 == 7 and pinned_a2_minus_32b2(l) != a2_minus_32b2_valid(-l)]
    assert mismatches


def test_prime_symbol_check():
    primes = PM1[:80]
    checked = 0
    for l in primes:
        for p in primes:
            if p == l:
                continue
            try:
                assert prime_symbol_check(l, p)
                checked += 1
            except ConditionNotMet:
                pass
    assert checked > 1000


def test_symbol_over_ideal_rejects_ideal_members():
    rep = represent_prime(17)
    with pytest.raises(NotCoprime):
        symbol_over_ideal(QuadInt(rep.x, -rep.y), rep)


def test_hplus_example():
    r = hplus_representation_test(73, 41)
    assert r.ok and r.discriminant == 328 and r.h == 4


def test_hplus_imaginary_case_for_p_seven():
    r = hplus_representation_test(113, 7)
    assert r.discriminant == -56 and r.h == 4 and r.ok


def test_hplus_not_applicable_for_l_seven_mod_8():
    with pytest.raises(NotApplicable):
        hplus_representation_test(23, 7)


def test_hplus_second_form_counterexample():
    # recorded failure of the clause for the non-principal form
    r = hplus_representation_test(17, 89)
    assert r.principal_ok and not r.other_ok


def test_formula_at_17_for_50881():
    assert product_formula_symbol(50881, 0) == hilbert_symbol(-50881, 245, 17) == -1
