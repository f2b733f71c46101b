"""Local symbols (-d, u+w)_l at odd primes through a product of base symbols.

For a prime l = +-1 mod 8 with pinned representation x + y sqrt2, and an
element pi_r of norm r, the element

    u_r + w_r sqrt2 = (1 + sqrt2)(x + y sqrt2) pi_r

satisfies ((u_r + w_r) / l) = (pi_r mod (x - y sqrt2) / l). The base
symbols are these values for r = -1, 2 and each prime p; the symbol for a
composite d is a product of base symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from tamek2.arith import Factorization, factor_squarefree, hilbert_symbol, is_prime, legendre
from tamek2.classnum import class_number_definite, narrow_class_number, represents_primitively
from tamek2.errors import ConditionNotMet, ConsistencyFailure, InvalidArgument, NotApplicable, NotCoprime
from tamek2.zsqrt2 import (
    FUND_UNIT,
    ONE,
    TWO_ELT,
    PrimeRep,
    QuadInt,
    positive_embedding,
    prime_element,
    represent_norm,
    represent_prime,
    residue_mod_ideal,
    signed_prime,
)


def symbol_over_ideal(z: QuadInt, rep: PrimeRep) -> int:
    """Quadratic residue symbol of z modulo the prime ideal (x - y sqrt2)."""
    res = residue_mod_ideal(z, rep)
    if res == 0:
        raise NotCoprime(f"{z} lies in the prime ideal above {rep.l}")
    return legendre(res, rep.l)


def norm_r_element(r: int) -> QuadInt:
    """pi_r of norm exactly r for r = -1, 2 or a prime p = +-1 mod 8."""
    if r == -1:
        return FUND_UNIT
    if r == 2:
        return TWO_ELT
    z = prime_element(r)
    return FUND_UNIT * z if r % 8 == 7 else z


def composite_element(r: Factorization) -> QuadInt:
    """pi_r = (1+sqrt2)^(n+c) (2+sqrt2)^m prod pi_p, of norm r."""
    z = TWO_ELT if r.m else ONE
    for p in r.odd_primes:
        z = z * prime_element(p)
    if (r.n + r.c) & 1:
        z = z * FUND_UNIT
    return z


def shifted_element(pi_r: QuadInt, rep: PrimeRep) -> QuadInt:
    """u_r + w_r sqrt2 = (1 + sqrt2)(x + y sqrt2) pi_r."""
    return FUND_UNIT * rep.element * pi_r


def shifted_symbol(pi_r: QuadInt, rep: PrimeRep) -> int:
    """((u_r + w_r) / l) from the explicit product."""
    z = shifted_element(pi_r, rep)
    s = legendre(z.trace_sum(), rep.l)
    if s == 0:
        raise NotCoprime(f"u_r + w_r = {z.trace_sum()} is divisible by {rep.l}")
    return s


def _dual_symbol(pi_r: QuadInt, rep: PrimeRep) -> int:
    explicit = shifted_symbol(pi_r, rep)
    ideal = symbol_over_ideal(pi_r, rep)
    if explicit != ideal:
        raise ConsistencyFailure(
            f"l={rep.l}, pi={pi_r}: (u_r+w_r / l) = {explicit} but (pi / l) = {ideal}",
            {"l": rep.l, "pi": str(pi_r)},
        )
    return explicit


@dataclass(frozen=True)
class BaseSymbolSet:
    l: int
    s_minus1: int
    s_two: int
    s_p: dict[int, int] = field(default_factory=dict)
    # (pi_p / l) for pi_p of norm (-1)^((p-1)/2) p
    s_pi: dict[int, int] = field(default_factory=dict)


def _check_l(l: int) -> None:
    if l % 8 not in (1, 7) or not is_prime(l):
        raise InvalidArgument(f"{l} is not a prime congruent to +-1 mod 8")


def base_symbols(l: int, primes=()) -> BaseSymbolSet:
    """Base symbols at l for r = -1, 2 and each p in ``primes``.

    Each value is computed from u_r + w_r and again as (pi_r / l); a
    mismatch raises ConsistencyFailure.
    """
    _check_l(l)
    rep = represent_prime(l)
    s_p = {}
    s_pi = {}
    for p in primes:
        if p == l:
            raise InvalidArgument(f"p must differ from l = {l}")
        if p % 8 not in (1, 7) or not is_prime(p):
            raise InvalidArgument(f"{p} is not a prime congruent to +-1 mod 8")
        s_p[p] = _dual_symbol(norm_r_element(p), rep)
        s_pi[p] = symbol_over_ideal(prime_element(p), rep)
    return BaseSymbolSet(
        l=l,
        s_minus1=_dual_symbol(FUND_UNIT, rep),
        s_two=_dual_symbol(TWO_ELT, rep),
        s_p=s_p,
        s_pi=s_pi,
    )


def _as_fac(d) -> Factorization:
    return d if isinstance(d, Factorization) else factor_squarefree(d)


def minus_one_exponent(n: int, pk: int) -> int:
    """Exponent (mod 2) of the (1+sqrt2)-symbol at p_k: n + [p_k = 1 mod 8]."""
    return (n + (1 if pk % 8 == 1 else 0)) & 1


def product_formula_symbol(d, k: int) -> int:
    """(-d, u+w)_{p_k} from base symbols at p_k (k indexes the odd primes of d)."""
    fac = _as_fac(d)
    if not 0 <= k < fac.t:
        raise InvalidArgument(f"index {k} out of range for {fac.odd_primes}")
    if any(p % 8 not in (1, 7) for p in fac.odd_primes):
        raise InvalidArgument(f"odd primes of {fac.value} must be +-1 mod 8")
    pk = fac.odd_primes[k]
    others = [p for p in fac.odd_primes if p != pk]
    bs = base_symbols(pk, others)
    out = bs.s_minus1 ** minus_one_exponent(fac.n, pk)
    if fac.m:
        out *= bs.s_two
    for p in others:
        out *= bs.s_p[p]
    return out


def direct_symbol(d, k: int) -> int:
    """(-d, u+w)_{p_k} with (u, w) from the pinned norm representation of d."""
    fac = _as_fac(d)
    pk = fac.odd_primes[k]
    nr = represent_norm(fac)
    return hilbert_symbol(-fac.value, nr.u + nr.w, pk)


def cofactor_symbol(d, k: int) -> int:
    """(-d, u+w)_l through the element for r = d / l, with the extra
    (1+sqrt2)-symbol when l = 1 mod 8."""
    fac = _as_fac(d)
    pk = fac.odd_primes[k]
    rest = Factorization.from_parts(fac.n, fac.m, [p for p in fac.odd_primes if p != pk])
    rep = represent_prime(pk)
    s = shifted_symbol(composite_element(rest), rep)
    if pk % 8 == 1:
        s *= shifted_symbol(FUND_UNIT, rep)
    return s


def composite_symbol_check(r, l: int) -> bool:
    """Symbol of the composite element for r against
    s_minus1^(n+c) * s_two^m * prod (pi_p / l)."""
    fac = _as_fac(r)
    _check_l(l)
    if fac.value % l == 0:
        raise InvalidArgument(f"l = {l} divides r = {fac.value}")
    if any(p % 8 not in (1, 7) for p in fac.odd_primes):
        raise InvalidArgument(f"odd primes of {fac.value} must be +-1 mod 8")
    lhs = shifted_symbol(composite_element(fac), represent_prime(l))
    bs = base_symbols(l, fac.odd_primes)
    rhs = bs.s_minus1 ** ((fac.n + fac.c) & 1) * bs.s_two**fac.m
    for p in fac.odd_primes:
        rhs *= bs.s_pi[p]
    return lhs == rhs


# -- criteria for the base symbols -----------------------------------------------------------


def a2_minus_32b2_valid(N: int) -> bool:
    """Whether N = a^2 - 32 b^2 with a > 0 and a = 1 mod 4.

    a mod 4 is constant on orbits of the automorph 17 + 3 sqrt32; for
    N > 0 the sign of a is constant too, for N < 0 both signs occur.
    Orbit representatives satisfy the Nagell bounds on b used below.
    """
    if N == 0:
        raise InvalidArgument("N must be nonzero")
    bmax = math.isqrt(N // 4) if N > 0 else math.isqrt(9 * -N // 32)
    for b in range(bmax + 1):
        val = N + 32 * b * b
        if val < 0:
            continue
        a = math.isqrt(val)
        if a * a != val or a == 0:
            continue
        for sa in (a, -a):
            if sa % 4 == 1 and (N < 0 or sa > 0):
                return True
    return False


def pinned_a2_minus_32b2(l: int) -> bool:
    """Whether (-1)^((l-1)/2) l = a^2 - 32 b^2 with a = 1 mod 4, where
    a + 4b sqrt2 generates the same prime ideal as the pinned element
    x + y sqrt2 and is positive under the real embedding.

    For l = 1 mod 8 this agrees with :func:`a2_minus_32b2_valid`; for
    l = 7 mod 8 the symbol of 1 + sqrt2 depends on the ideal above l, so the
    representation has to be tied to it.
    """
    _check_l(l)
    N = signed_prime(l)
    rep = represent_prime(l)
    r = rep.sqrt2_residue()
    bmax = math.isqrt(N // 4) if N > 0 else math.isqrt(9 * -N // 32)
    for b in range(1, bmax + 1):
        val = N + 32 * b * b
        a = math.isqrt(val) if val > 0 else 0
        if a == 0 or a * a != val:
            continue
        for sa in (a, -a):
            for sb in (b, -b):
                z = QuadInt(sa, 4 * sb)
                # z generates the pinned ideal iff its conjugate lies in (x - y sqrt2)
                if (sa - 4 * sb * r) % l == 0 and positive_embedding(z) and sa % 4 == 1:
                    return True
    return False


def base_symbol_criteria(l: int) -> tuple[bool, bool]:
    """(s_minus1 = 1 iff +-l = a^2 - 32b^2 (pinned ideal), s_two = 1 iff l = +-1 mod 16)."""
    bs = base_symbols(l)
    unit_ok = (bs.s_minus1 == 1) == pinned_a2_minus_32b2(l)
    two_ok = (bs.s_two == 1) == (l % 16 in (1, 15))
    return unit_ok, two_ok


def pi_symbol_condition(l: int, p: int) -> bool:
    """((-1)^((p-1)/2) p / l) = 1, which makes (pi_p / l) independent of the ideal above l."""
    return legendre(signed_prime(p), l) == 1


def prime_symbol_check(l: int, p: int) -> bool:
    """(u_p + w_p / l) = (pi / l), times s_minus1 when p = 7 mod 8."""
    _check_l(l)
    if p == l:
        raise InvalidArgument("p must differ from l")
    if not pi_symbol_condition(l, p):
        raise ConditionNotMet(f"((-1)^((p-1)/2) p / l) = -1 for p={p}, l={l}")
    rep = represent_prime(l)
    bs = base_symbols(l, [p])
    pi_sym = symbol_over_ideal(prime_element(p), rep)
    pi_sym_conj = symbol_over_ideal(prime_element(p).conj(), rep)
    if pi_sym != pi_sym_conj:
        raise ConsistencyFailure(f"(pi/l) not well defined for p={p}, l={l}")
    expected = pi_sym if p % 8 == 1 else bs.s_minus1 * pi_sym
    return bs.s_p[p] == expected


@dataclass(frozen=True)
class HplusResult:
    l: int
    p: int
    discriminant: int
    h: int
    exponent: int
    pi_symbol: int
    principal: bool  # l^(h/4) primitively represented by the principal form
    other: bool  # ... by the form tied to pi/l = -1
    principal_ok: bool
    other_ok: bool

    @property
    def ok(self) -> bool:
        return self.principal_ok and self.other_ok


def hplus_forms(p: int) -> tuple[int, tuple[int, int, int], tuple[int, int, int]]:
    """(discriminant, principal form, form tied to pi/l = -1) for Q(sqrt((-1)^((p-1)/2) 2p))."""
    if p % 8 == 1:
        return 8 * p, (1, 0, -2 * p), (p, 0, -2)
    return -8 * p, (1, 0, 2 * p), (2, 0, p)


def hplus_representation_test(l: int, p: int) -> HplusResult:
    """Compare (pi_p / l) with representability of l^(h+/4) by two binary forms."""
    _check_l(l)
    _check_l(p)
    if p == l:
        raise InvalidArgument("p must differ from l")
    if not pi_symbol_condition(l, p):
        raise ConditionNotMet(f"((-1)^((p-1)/2) p / l) = -1 for p={p}, l={l}")
    if l % 8 == 7:
        # (-pi / l) = -(pi / l) here, while representability cannot see the sign of pi
        raise NotApplicable(f"l = {l} = 7 mod 8: (pi/l) depends on the sign of pi")
    D, principal_form, other_form = hplus_forms(p)
    h = narrow_class_number(D).h_plus if D > 0 else class_number_definite(D)
    if h % 4:
        raise NotApplicable(f"h+ = {h} for discriminant {D} is not divisible by 4")
    target = l ** (h // 4)
    pi_sym = symbol_over_ideal(prime_element(p), represent_prime(l))
    principal = represents_primitively(principal_form, target)
    other = represents_primitively(other_form, target)
    return HplusResult(
        l, p, D, h, h // 4, pi_sym, principal, other,
        principal_ok=principal == (pi_sym == 1),
        other_ok=other == (pi_sym == -1),
    )


def hplus_representation_ok(l: int, p: int) -> bool:
    return hplus_representation_test(l, p).ok
