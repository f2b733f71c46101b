"""Integer and local-symbol primitives.

Symbols are returned as plain ints in {-1, 0, +1}. Places are primes
(ints) or :data:`INF` for the real place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from tamek2 import kernels
from tamek2.errors import InvalidArgument, NotSquarefree

INF = math.inf


def legendre(a: int, q: int) -> int:
    """Legendre/Jacobi symbol (a/q); 0 when gcd(a, q) > 1."""
    if q <= 1 or not q & 1:
        raise InvalidArgument(f"modulus must be odd and > 1, got {q}")
    return kernels.jacobi(a, q)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if not n & 1 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def sieve_primes(limit: int, residue_filter: tuple[int, int] | None = None) -> list[int]:
    """All primes below ``limit``, optionally only those with p = r mod M."""
    if limit <= 2:
        return []
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit, p)))
    if residue_filter is None:
        return [p for p in range(2, limit) if flags[p]]
    r, mod = residue_filter
    return [p for p in range(r % mod, limit, mod) if flags[p]]


def prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| as {prime: exponent}."""
    n = abs(n)
    if n == 0:
        raise InvalidArgument("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    step = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Factorization:
    """A squarefree integer written as (-1)^n * 2^m * (product of odd primes)."""

    value: int
    n: int
    m: int
    odd_primes: tuple[int, ...]
    residues: tuple[int, ...] = field(repr=False)

    @property
    def t(self) -> int:
        return len(self.odd_primes)

    @property
    def c(self) -> int:
        return sum(1 for p in self.odd_primes if p % 8 == 7)

    @classmethod
    def from_parts(cls, n: int, m: int, odd_primes) -> "Factorization":
        primes = tuple(sorted(odd_primes))
        value = (-1) ** n * 2**m * math.prod(primes)
        return cls(value, n, m, primes, tuple(p % 16 for p in primes))


def factor_squarefree(d: int) -> Factorization:
    if d == 0:
        raise InvalidArgument("d must be nonzero")
    fac = prime_factors(d) if abs(d) > 1 else {}
    for p, e in fac.items():
        if e > 1:
            raise NotSquarefree(d, p)
    m = 1 if 2 in fac else 0
    odd = tuple(sorted(p for p in fac if p != 2))
    return Factorization(d, int(d < 0), m, odd, tuple(p % 16 for p in odd))


def hilbert_symbol(a: int, b: int, place) -> int:
    """Local Hilbert symbol (a, b) at a prime or the real place."""
    if a == 0 or b == 0:
        raise InvalidArgument("Hilbert symbol arguments must be nonzero")
    if place == INF or place == "inf":
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not is_prime(place):
        raise InvalidArgument(f"place must be a prime or infinity, got {place!r}")
    if place == 2:
        return kernels.hilbert_two(a, b)
    return kernels.hilbert_odd(a, b, place)


def places_of(*values: int) -> list:
    """The places where a symbol with these arguments can be nontrivial: 2, primes dividing them, infinity."""
    primes = {2}
    for v in values:
        if abs(v) > 1:
            primes.update(prime_factors(v))
    return sorted(primes) + [INF]


def is_global_norm(x: int, d: int) -> bool:
    """Whether x is a norm from Q(sqrt d), by the local symbols at every place."""
    return all(hilbert_symbol(x, d, p) == 1 for p in places_of(x, d))


def norm_tests(d: Factorization | int) -> tuple[int, int]:
    """Return (a, a') for Q(sqrt d): a = [2 is not a norm], a' = number of {-1, 2} not norms."""
    value = d.value if isinstance(d, Factorization) else d
    if value <= 1:
        raise InvalidArgument(f"norm tests need d > 1, got {value}")
    two_bad = not is_global_norm(2, value)
    minus_bad = not is_global_norm(-1, value)
    return int(two_bad), int(two_bad) + int(minus_bad)
