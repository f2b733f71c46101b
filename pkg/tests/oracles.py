"""Brute-force reference implementations used only by the tests."""

from __future__ import annotations

import math


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def hilbert_brute(a: int, b: int, p: int) -> int:
    """(a, b)_p by searching for a primitive zero of a x^2 + b y^2 - z^2 mod p^k.

    Valid for squarefree-ish inputs with small valuations; k is chosen so
    Hensel lifting applies.
    """
    k = _vp(a, p) + _vp(b, p) + (5 if p == 2 else 2)
    mod = p**k
    squares: set[int] = set()
    unit_squares: set[int] = set()
    for z in range(mod):
        s = z * z % mod
        squares.add(s)
        if z % p:
            unit_squares.add(s)
    for x in range(mod):
        for y in range(mod):
            val = (a * x * x + b * y * y) % mod
            if x % p or y % p:
                if val in squares:
                    return 1
            elif val in unit_squares:
                return 1
    return -1


def euler_legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def f2_rank_dense(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                m[i] = [(x + y) % 2 for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def forms_represent_brute(f, N: int, bound: int) -> bool:
    """Primitive representation of N by f = (a, b, c) with |x|, |y| <= bound."""
    a, b, c = f
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if math.gcd(x, y) == 1 and a * x * x + b * x * y + c * y * y == N:
                return True
    return False
