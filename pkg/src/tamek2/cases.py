"""Case analysis for d = p1 p2 p3 with all p_i = 1 mod 8.

The three quadratic-residue "edges" between the primes fix one of four
cases; within a case the rank of the symbol matrix is decided by the
2-adic symbol (-d, v)_2 and the residues (v / p_i) alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tamek2.arith import hilbert_symbol, is_prime, legendre
from tamek2.errors import InvalidArgument
from tamek2.zsqrt2 import represent_norm

ADMISSIBLE = frozenset({(1, 3), (1, 2), (2, 2), (2, 1), (3, 1), (3, 0), (4, 1), (4, 0)})


@dataclass(frozen=True)
class CaseProfile:
    primes: tuple[int, int, int]
    edges: tuple[int, int, int]  # (p2/p1), (p3/p1), (p3/p2)
    case_label: int
    v: int
    v_symbols: tuple[int, int, int, int]  # (-d,v)_2, (v/p1), (v/p2), (v/p3)


def _check_primes(ps) -> None:
    if len(set(ps)) != 3:
        raise InvalidArgument(f"primes must be distinct: {ps}")
    for p in ps:
        if p % 8 != 1 or not is_prime(p):
            raise InvalidArgument(f"{p} is not a prime congruent to 1 mod 8")


def classify_and_rank(p1: int, p2: int, p3: int, v: int | None = None) -> tuple[CaseProfile, int]:
    """Case label and 4-rank of K2 for Q(sqrt(p1 p2 p3)) via the case conditions."""
    ps = tuple(sorted((p1, p2, p3)))
    _check_primes(ps)
    q1, q2, q3 = ps
    d = q1 * q2 * q3
    if v is None:
        v = represent_norm(d).v
    edges = (legendre(q2, q1), legendre(q3, q1), legendre(q3, q2))
    case = 1 + sum(1 for e in edges if e == -1)
    sym2 = hilbert_symbol(-d, v, 2)
    res = (legendre(v, q1), legendre(v, q2), legendre(v, q3))
    profile = CaseProfile(ps, edges, case, v, (sym2, *res))

    if case == 1:
        rank = 3 if sym2 == 1 and res == (1, 1, 1) else 2
    elif case == 2:
        # the two primes joined by the single -1 edge play the roles of p1, p2
        pair = [(0, 1), (0, 2), (1, 2)][edges.index(-1)]
        rank = 2 if sym2 == 1 and res[pair[0]] == res[pair[1]] else 1
    else:
        rank = 1 if sym2 == 1 else 0
    return profile, rank


def theoretical_densities() -> tuple[dict[int, Fraction], dict[tuple[int, int], Fraction]]:
    """Limiting densities in X: by 4-rank, and by (case, 4-rank)."""
    by_case = {
        (1, 3): Fraction(1, 64),
        (1, 2): Fraction(7, 64),
        (2, 2): Fraction(3, 32),
        (2, 1): Fraction(9, 32),
        (3, 1): Fraction(3, 16),
        (3, 0): Fraction(3, 16),
        (4, 1): Fraction(1, 16),
        (4, 0): Fraction(1, 16),
    }
    by_rank = {0: Fraction(1, 4), 1: Fraction(17, 32), 2: Fraction(13, 64), 3: Fraction(1, 64)}
    return by_rank, by_case


def case_marginals(by_case: dict[tuple[int, int], Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for (case, _), val in by_case.items():
        out[case] = out.get(case, 0) + val
    return out


def rank_marginals(by_case: dict[tuple[int, int], Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for (_, rank), val in by_case.items():
        out[rank] = out.get(rank, 0) + val
    return dict(sorted(out.items()))
