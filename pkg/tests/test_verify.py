import random

import pytest

from tamek2.arith import sieve_primes
from tamek2.verify import SUITES, random_admissible, reciprocity_product, run_suite


@pytest.mark.parametrize(
    "suite,limit",
    [("product-formula", 10**5), ("lemma1", 5000), ("lemma2", 5000), ("lemma3", 300), ("r2", 10**5), ("reciprocity", 10**4)],
)
def test_suites_pass_on_small_limits(suite, limit):
    out = run_suite(suite, limit, samples=100)
    assert out["passed"] and out["checked"] > 0 and out["counterexamples"] == []


def test_hplus_suite_reports_counterexamples():
    out = run_suite("hplus", 300)
    assert not out["passed"]
    assert out["clause_failures"]["principal"] == 0
    assert out["failures"] == out["clause_failures"]["other"] > 0
    assert out["counterexamples"][0].keys() >= {"l", "p", "D", "h", "pi_symbol"}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
    assert "hplus" in SUITES


def test_random_admissible_shape():
    rng = random.Random(0)
    primes = [p for p in sieve_primes(10**4) if p % 8 in (1, 7)]
    for _ in range(200):
        fac = random_admissible(rng, 10**7, primes)
        assert 1 <= fac.t and abs(fac.value) <= 10**7
        assert all(p % 8 in (1, 7) for p in fac.odd_primes)


def test_reciprocity_product():
    assert reciprocity_product(-1, -1) == 1
    assert reciprocity_product(2 * 3 * 5, -7 * 11) == 1


def test_hplus_suite_lists_not_applicable_pairs():
    out = run_suite("hplus", 120)
    assert out["not_applicable_count"] >= len(out["not_applicable"]) > 0
    assert all("reason" in item for item in out["not_applicable"])
