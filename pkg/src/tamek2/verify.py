"""Property sweeps behind ``tamek2 verify``.

Each sweep returns a JSON-ready summary with the number of instances
checked, failures, and up to ``MAX_COUNTEREXAMPLES`` counterexamples.
"""

from __future__ import annotations

import bisect
import random

from tamek2.product_formula import (
    a2_minus_32b2_valid,
    base_symbols,
    direct_symbol,
    prime_symbol_check,
    hplus_representation_test,
    base_symbol_criteria,
    pi_symbol_condition,
    product_formula_symbol,
    composite_symbol_check,
    symbol_over_ideal,
)
from tamek2.arith import Factorization, hilbert_symbol, legendre, places_of, sieve_primes
from tamek2.errors import ConditionNotMet, NotApplicable
from tamek2.zsqrt2 import FUND_UNIT, TWO_ELT, prime_element, represent_prime, signed_prime

MAX_COUNTEREXAMPLES = 20

SUITES = ("product-formula", "lemma1", "lemma2", "lemma3", "hplus", "r2", "reciprocity")

DEFAULT_LIMITS = {
    "product-formula": 10**7,
    "lemma1": 10**5,
    "lemma2": 10**5,
    "lemma3": 2000,
    "hplus": 300,
    "r2": 10**6,
    "reciprocity": 10**6,
}


class _Summary:
    def __init__(self, suite: str, limit: int):
        self.suite = suite
        self.limit = limit
        self.checked = 0
        self.failures = 0
        self.skipped = 0
        self.counterexamples: list[dict] = []
        self.extra: dict = {}

    def record(self, ok: bool, example: dict) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(example)

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "limit": self.limit,
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.failures == 0 and self.checked > 0,
            "counterexamples": self.counterexamples,
        }
        out.update(self.extra)
        return out


def _pm1_primes(limit: int) -> list[int]:
    return [p for p in sieve_primes(limit) if p % 8 in (1, 7)]


def random_admissible(rng: random.Random, bound: int, primes: list[int]) -> Factorization:
    """Random squarefree d = (-1)^n 2^m prod p_i, p_i = +-1 mod 8, t >= 1, |d| <= bound."""
    while True:
        n = rng.randint(0, 1)
        m = rng.randint(0, 1)
        value = 2**m
        chosen: list[int] = []
        for _ in range(rng.randint(1, 4)):
            cap = bound // value
            hi = bisect.bisect_right(primes, cap)
            if hi == 0:
                break
            p = primes[rng.randrange(hi)]
            if p in chosen:
                continue
            chosen.append(p)
            value *= p
        if chosen:
            return Factorization.from_parts(n, m, chosen)


def two_prime_closed_forms(p: int, l: int) -> list[tuple[str, int, int]]:
    """Closed forms of (-d, u+w)_l for the worked families d = +-pl, +-2pl.

    Returns (label, product-formula value, closed-form value) triples.
    """
    rep = represent_prime(l)
    pi = symbol_over_ideal(prime_element(p), rep)
    one = symbol_over_ideal(FUND_UNIT, rep)
    two = symbol_over_ideal(TWO_ELT, rep)
    if p % 8 == 7:
        cases = [("pl", 0, 0, pi), ("2pl", 0, 1, two * pi), ("-pl", 1, 0, one * pi), ("-2pl", 1, 1, two * one * pi)]
    else:
        cases = [("pl", 0, 0, one * pi), ("-pl", 1, 0, pi)]
    out = []
    for label, n, m, closed in cases:
        fac = Factorization.from_parts(n, m, [p, l])
        k = fac.odd_primes.index(l)
        out.append((label, product_formula_symbol(fac, k), closed))
    return out


def _example_pairs(rng: random.Random, p_mod: int, count: int, bound: int = 5000) -> list[tuple[int, int]]:
    ps = [p for p in sieve_primes(bound) if p % 8 == p_mod]
    ls = [p for p in sieve_primes(bound) if p % 8 == 1]
    pairs: set[tuple[int, int]] = set()
    while len(pairs) < count:
        p, l = rng.choice(ps), rng.choice(ls)
        if p != l and legendre(l, p) == 1:
            pairs.add((p, l))
    return sorted(pairs)


def verify_product_formula(limit: int, samples: int = 1000, seed: int = 0, pairs: int = 100) -> dict:
    rng = random.Random(seed)
    s = _Summary("product-formula", limit)
    primes = _pm1_primes(limit // 7 + 2)
    for _ in range(samples):
        fac = random_admissible(rng, limit, primes)
        for k in range(fac.t):
            f = product_formula_symbol(fac, k)
            d = direct_symbol(fac, k)
            s.record(f == d, {"d": fac.value, "p_k": fac.odd_primes[k], "formula": f, "direct": d})
    closed_checked = 0
    for p_mod, fam in ((7, "p=7,l=1 mod 8"), (1, "p=l=1 mod 8")):
        for p, l in _example_pairs(rng, p_mod, pairs):
            for label, formula, closed in two_prime_closed_forms(p, l):
                fac = Factorization.from_parts(int(label.startswith("-")), int("2" in label), [p, l])
                direct = direct_symbol(fac, fac.odd_primes.index(l))
                closed_checked += 1
                s.record(
                    formula == closed == direct,
                    {"family": fam, "d": label, "p": p, "l": l, "formula": formula, "closed": closed, "direct": direct},
                )
    s.extra["specializations_checked"] = closed_checked
    return s.as_dict()


def verify_base_criteria(which: int, limit: int) -> dict:
    s = _Summary(f"lemma{which}", limit)
    plain_mismatch = 0
    for l in _pm1_primes(limit):
        ok = base_symbol_criteria(l)[which - 1]
        s.record(ok, {"l": l})
        if which == 1:
            # the ideal-blind existence test, reported for comparison only
            plain = a2_minus_32b2_valid(signed_prime(l))
            plain_mismatch += plain != (base_symbols(l).s_minus1 == 1)
    if which == 1:
        s.extra["plain_existence_mismatches"] = plain_mismatch
    return s.as_dict()


def verify_prime_symbols(limit: int) -> dict:
    s = _Summary("lemma3", limit)
    primes = _pm1_primes(limit)
    for l in primes:
        for p in primes:
            if p == l or not pi_symbol_condition(l, p):
                s.skipped += p != l
                continue
            s.record(prime_symbol_check(l, p), {"l": l, "p": p})
    return s.as_dict()


def verify_hplus(limit: int) -> dict:
    s = _Summary("hplus", limit)
    primes = _pm1_primes(limit)
    clause_fail = {"principal": 0, "other": 0}
    not_applicable: list[dict] = []
    for l in primes:
        for p in primes:
            if p == l:
                continue
            try:
                r = hplus_representation_test(l, p)
            except ConditionNotMet:
                s.skipped += 1
                continue
            except NotApplicable as exc:
                not_applicable.append({"l": l, "p": p, "reason": str(exc)})
                continue
            clause_fail["principal"] += not r.principal_ok
            clause_fail["other"] += not r.other_ok
            s.record(
                r.ok,
                {
                    "l": l,
                    "p": p,
                    "D": r.discriminant,
                    "h": r.h,
                    "pi_symbol": r.pi_symbol,
                    "principal_rep": r.principal,
                    "other_rep": r.other,
                },
            )
    s.extra["clause_failures"] = clause_fail
    s.extra["not_applicable_count"] = len(not_applicable)
    s.extra["not_applicable"] = not_applicable[:MAX_COUNTEREXAMPLES]
    return s.as_dict()


def verify_r2(limit: int, samples: int = 1000, seed: int = 0) -> dict:
    rng = random.Random(seed)
    s = _Summary("r2", limit)
    primes = _pm1_primes(max(200, min(limit, 20000)))
    while s.checked < samples:
        fac = random_admissible(rng, limit, primes)
        l = rng.choice(primes)
        if fac.value % l == 0:
            continue
        s.record(composite_symbol_check(fac, l), {"r": fac.value, "l": l})
    return s.as_dict()


def reciprocity_product(a: int, b: int) -> int:
    prod = 1
    for place in places_of(a, b):
        prod *= hilbert_symbol(a, b, place)
    return prod


def verify_reciprocity(limit: int, samples: int = 10_000, seed: int = 0) -> dict:
    rng = random.Random(seed)
    s = _Summary("reciprocity", limit)
    while s.checked < samples:
        a = rng.randint(-limit, limit)
        b = rng.randint(-limit, limit)
        if a == 0 or b == 0:
            continue
        s.record(reciprocity_product(a, b) == 1, {"a": a, "b": b})
    return s.as_dict()


def run_suite(suite: str, limit: int | None = None, samples: int | None = None, seed: int = 0) -> dict:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    limit = DEFAULT_LIMITS[suite] if limit is None else limit
    if suite == "product-formula":
        return verify_product_formula(limit, samples or 1000, seed)
    if suite == "lemma1":
        return verify_base_criteria(1, limit)
    if suite == "lemma2":
        return verify_base_criteria(2, limit)
    if suite == "lemma3":
        return verify_prime_symbols(limit)
    if suite == "hplus":
        return verify_hplus(limit)
    if suite == "r2":
        return verify_r2(limit, samples or 1000, seed)
    return verify_reciprocity(limit, samples or 10_000, seed)


__all__ = ["SUITES", "run_suite", "reciprocity_product", "random_admissible", "two_prime_closed_forms"]
