"""Binary quadratic forms: reduction, cycles and narrow class numbers.

Forms are tuples (a, b, c) standing for a x^2 + b xy + c y^2 with
discriminant b^2 - 4ac.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from tamek2.arith import prime_factors
from tamek2.errors import InvalidArgument

Form = tuple[int, int, int]


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for e in prime_factors(D).values())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for e in prime_factors(m).values())
    return False


def _check_real(D: int) -> None:
    if D <= 0 or math.isqrt(D) ** 2 == D:
        raise InvalidArgument(f"expected a positive non-square discriminant, got {D}")


def is_reduced(f: Form) -> bool:
    """Reducedness for indefinite forms: 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b."""
    a, b, _ = f
    D = discriminant(f)
    s = math.isqrt(D)
    if not 0 < b <= s:
        return False
    a2 = 2 * abs(a)
    return D < (a2 + b) ** 2 and (a2 - b <= 0 or (a2 - b) ** 2 < D)


def _normalize_b(b: int, c: int, D: int) -> int:
    s = math.isqrt(D)
    m = 2 * abs(c)
    if abs(c) > s:
        r = b % m
        return r - m if r > abs(c) else r
    return s - (s - b) % m


def rho(f: Form) -> Form:
    """One reduction step (a, b, c) -> (c, r, (r^2 - D)/4c); a proper equivalence."""
    _, b, c = f
    D = discriminant(f)
    r = _normalize_b(-b, c, D)
    return (c, r, (r * r - D) // (4 * c))


def reduce_indefinite(f: Form) -> Form:
    D = discriminant(f)
    _check_real(D)
    steps = 0
    while not is_reduced(f):
        f = rho(f)
        steps += 1
        if steps > 10_000 + 4 * D.bit_length() ** 2:
            raise RuntimeError(f"reduction of {f} did not terminate")
    return f


def reduced_forms(D: int) -> list[Form]:
    """All primitive reduced indefinite forms of discriminant D."""
    _check_real(D)
    s = math.isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4  # negative
        for a_abs in range(1, -ac + 1):
            if -ac % a_abs:
                continue
            for a in (a_abs, -a_abs):
                f = (a, b, ac // a)
                if math.gcd(math.gcd(a, b), ac // a) == 1 and is_reduced(f):
                    out.append(f)
    return sorted(out)


def cycle_of(f: Form) -> list[Form]:
    """The rho-cycle through a reduced form."""
    cyc = [f]
    g = rho(f)
    while g != f:
        cyc.append(g)
        g = rho(g)
    return cyc


@dataclass(frozen=True)
class FormClassGroupSummary:
    discriminant: int
    h_plus: int
    cycle_sizes: tuple[int, ...]

    @property
    def num_cycles(self) -> int:
        return len(self.cycle_sizes)


def form_cycles(D: int) -> list[list[Form]]:
    cycles = []
    seen: set[Form] = set()
    for f in reduced_forms(D):
        if f in seen:
            continue
        cyc = cycle_of(f)
        seen.update(cyc)
        cycles.append(cyc)
    return cycles


def narrow_class_number(D: int) -> FormClassGroupSummary:
    """h+ of the real quadratic field of fundamental discriminant D, by counting cycles."""
    if D <= 0 or not is_fundamental_discriminant(D):
        raise InvalidArgument(f"{D} is not a positive fundamental discriminant")
    cycles = form_cycles(D)
    return FormClassGroupSummary(D, len(cycles), tuple(len(c) for c in cycles))


# -- positive definite forms ---------------------------------------------------


def reduce_definite(f: Form) -> Form:
    a, b, c = f
    if a <= 0 or discriminant(f) >= 0:
        raise InvalidArgument(f"{f} is not positive definite")
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
            continue
        break
    if b < 0 and (a == c or -b == a):
        b = -b
    return (a, b, c)


def class_number_definite(D: int) -> int:
    """Number of primitive reduced positive definite forms of discriminant D < 0."""
    if D >= 0:
        raise InvalidArgument("expected a negative discriminant")
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2 or (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                count += 1
        a += 1
    return count


# -- equivalence and representation ------------------------------------------------


def properly_equivalent(f: Form, g: Form) -> bool:
    D = discriminant(f)
    if discriminant(g) != D:
        return False
    if D < 0:
        return reduce_definite(f) == reduce_definite(g)
    rg = reduce_indefinite(g)
    return rg in cycle_of(reduce_indefinite(f))


def _sqrt_mod_4n(D: int, N: int) -> list[int]:
    """All b in [0, 2N) with b^2 = D mod 4N."""
    from sympy.ntheory import sqrt_mod

    roots = sqrt_mod(D, 4 * N, all_roots=True) or []
    return sorted({r % (2 * N) for r in roots})


def represents_primitively(f: Form, N: int) -> bool:
    """Whether f(x, y) = N has a solution with gcd(x, y) = 1.

    f represents N primitively iff f is properly equivalent to some
    (N, b, c) of the same discriminant.
    """
    if N <= 0:
        # only used with positive targets
        raise InvalidArgument("target must be positive")
    D = discriminant(f)
    for b in _sqrt_mod_4n(D, N):
        g = (N, b, (b * b - D) // (4 * N))
        if properly_equivalent(f, g):
            return True
    return False
