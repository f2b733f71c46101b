"""Pure-Python versions of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable, and as the
reference the extension is tested against.
"""

from __future__ import annotations


def jacobi(a: int, q: int) -> int:
    """Jacobi symbol (a/q) for odd q > 1. Argument checks live in the caller."""
    a %= q
    acc = 1
    while a:
        while not a & 1:
            a >>= 1
            if q & 7 in (3, 5):
                acc = -acc
        a, q = q, a
        if a & 3 == 3 and q & 3 == 3:
            acc = -acc
        a %= q
    return acc if q == 1 else 0


def f2_rank(rows: list[int], ncols: int) -> int:
    """Rank over F2 of a matrix given as bit-packed rows (bit j = column j)."""
    work = list(rows)
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = -1
        for r in range(rank, len(work)):
            if work[r] & bit:
                pivot = r
                break
        if pivot < 0:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            if work[r] & bit:
                work[r] ^= prow
        rank += 1
        if rank == len(work):
            break
    return rank


def hilbert_odd(a: int, b: int, p: int) -> int:
    """(a, b)_p for an odd prime p and nonzero a, b."""
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    beta = 0
    while b % p == 0:
        b //= p
        beta += 1
    s = 1
    if alpha & 1 and beta & 1 and p & 3 == 3:
        s = -s
    if beta & 1:
        s *= jacobi(a, p)
    if alpha & 1:
        s *= jacobi(b, p)
    return s


def hilbert_two(a: int, b: int) -> int:
    """(a, b)_2 for nonzero a, b."""
    alpha = 0
    while not a & 1:
        a >>= 1
        alpha += 1
    beta = 0
    while not b & 1:
        b >>= 1
        beta += 1
    # eps(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2
    ua = a & 7
    ub = b & 7
    e = ((ua >> 1) & 1) & ((ub >> 1) & 1)
    if alpha & 1 and ub in (3, 5):
        e ^= 1
    if beta & 1 and ua in (3, 5):
        e ^= 1
    return -1 if e else 1
