# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors tamek2._pykernels for machine-word inputs."""

from tamek2 import _pykernels

cdef long long _LIMIT = 1LL << 62


cdef int _jacobi(long long a, long long q) nogil:
    cdef int acc = 1
    cdef long long tmp
    a %= q
    if a < 0:
        a += q
    while a != 0:
        while (a & 1) == 0:
            a >>= 1
            if (q & 7) == 3 or (q & 7) == 5:
                acc = -acc
        tmp = a
        a = q
        q = tmp
        if (a & 3) == 3 and (q & 3) == 3:
            acc = -acc
        a %= q
    if q == 1:
        return acc
    return 0


def jacobi(a, q):
    if -_LIMIT < a < _LIMIT and 0 < q < _LIMIT:
        return _jacobi(a, q)
    return _pykernels.jacobi(a, q)


def f2_rank(rows, int ncols):
    cdef unsigned long long work[64]
    cdef unsigned long long bit, prow, tmp
    cdef int n = len(rows)
    cdef int rank = 0, col, r, pivot
    if n > 64 or ncols > 64:
        return _pykernels.f2_rank(rows, ncols)
    for r in range(n):
        work[r] = rows[r]
    for col in range(ncols):
        bit = 1ULL << col
        pivot = -1
        for r in range(rank, n):
            if work[r] & bit:
                pivot = r
                break
        if pivot < 0:
            continue
        tmp = work[rank]
        work[rank] = work[pivot]
        work[pivot] = tmp
        prow = work[rank]
        for r in range(rank + 1, n):
            if work[r] & bit:
                work[r] ^= prow
        rank += 1
        if rank == n:
            break
    return rank


cdef int _hilbert_odd(long long a, long long b, long long p) nogil:
    cdef int alpha = 0, beta = 0, s = 1
    while a % p == 0:
        a //= p
        alpha += 1
    while b % p == 0:
        b //= p
        beta += 1
    if (alpha & 1) and (beta & 1) and (p & 3) == 3:
        s = -s
    if beta & 1:
        s *= _jacobi(a, p)
    if alpha & 1:
        s *= _jacobi(b, p)
    return s


cdef int _hilbert_two(long long a, long long b) nogil:
    cdef int alpha = 0, beta = 0, e
    cdef long long ua, ub
    while (a & 1) == 0:
        a >>= 1
        alpha += 1
    while (b & 1) == 0:
        b >>= 1
        beta += 1
    ua = a & 7
    ub = b & 7
    e = ((ua >> 1) & 1) & ((ub >> 1) & 1)
    if (alpha & 1) and (ub == 3 or ub == 5):
        e ^= 1
    if (beta & 1) and (ua == 3 or ua == 5):
        e ^= 1
    if e:
        return -1
    return 1


def hilbert_odd(a, b, p):
    if -_LIMIT < a < _LIMIT and -_LIMIT < b < _LIMIT and 0 < p < _LIMIT:
        return _hilbert_odd(a, b, p)
    return _pykernels.hilbert_odd(a, b, p)


def hilbert_two(a, b):
    if -_LIMIT < a < _LIMIT and -_LIMIT < b < _LIMIT:
        return _hilbert_two(a, b)
    return _pykernels.hilbert_two(a, b)
