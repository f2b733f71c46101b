"""Arithmetic in Z[sqrt 2]: norms, unit normalization, norm equations and
reduction modulo a split prime ideal."""

from __future__ import annotations

import csv
import math
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from tamek2.arith import Factorization, factor_squarefree, is_prime, sieve_primes
from tamek2.errors import ConsistencyFailure, InvalidArgument, NoRepresentation


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(2)."""

    a: int
    b: int

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b)

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            # only units are invertible in Z[sqrt 2]
            if abs(self.norm()) != 1:
                raise InvalidArgument(f"{self} is not a unit")
            return (self.conj() * QuadInt(self.norm(), 0)) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "QuadInt":
        return QuadInt(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def trace_sum(self) -> int:
        """a + b, the quantity u + w fed to the symbols."""
        return self.a + self.b

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"


ONE = QuadInt(1, 0)
SQRT2 = QuadInt(0, 1)
FUND_UNIT = QuadInt(1, 1)  # norm -1
UNIT_SQ = QuadInt(3, 2)  # (1+sqrt2)^2, norm +1
UNIT_SQ_INV = QuadInt(3, -2)
TWO_ELT = QuadInt(2, 1)  # norm 2


def quad_arith(op: str, *operands):
    """Dispatch helper: op in {"mul", "conj", "norm", "unit_reduce"}."""
    if op == "mul":
        out = ONE
        for z in operands:
            out = out * z
        return out
    if op == "conj":
        return operands[0].conj()
    if op == "norm":
        return operands[0].norm()
    if op == "unit_reduce":
        return unit_reduce(operands[0])
    raise InvalidArgument(f"unknown op {op!r}")


def positive_embedding(z: QuadInt) -> bool:
    # sign of a + b*sqrt2 as a real number
    if z.a >= 0 and z.b >= 0:
        return z.a > 0 or z.b > 0
    if z.a <= 0 and z.b <= 0:
        return False
    if z.a > 0:
        return z.a * z.a > 2 * z.b * z.b
    return 2 * z.b * z.b > z.a * z.a


def unit_reduce(z: QuadInt) -> QuadInt:
    """Representative of {+-(3+2sqrt2)^k z} with u > 0, w >= 0 and u minimal."""
    if z.norm() == 0:
        raise InvalidArgument("cannot reduce an element of norm 0")
    if not positive_embedding(z):
        z = -z
    while not (z.a > 0 and z.b >= 0):
        z = z * UNIT_SQ
    while True:
        down = z * UNIT_SQ_INV
        if down.a > 0 and down.b >= 0:
            z = down
        else:
            return z


@dataclass(frozen=True)
class PrimeRep:
    """(-1)^((l-1)/2) l = x^2 - 2y^2 with x = 1 mod 4 and x, y > 0.

    The prime ideal attached to it is generated by x - y*sqrt2.
    """

    l: int
    x: int
    y: int

    @property
    def element(self) -> QuadInt:
        return QuadInt(self.x, self.y)

    def sqrt2_residue(self) -> int:
        """Residue of sqrt 2 modulo the ideal (x - y sqrt2): x / y mod l."""
        return self.x * pow(self.y, -1, self.l) % self.l

    def is_valid(self) -> bool:
        l, x, y = self.l, self.x, self.y
        sign = 1 if l % 4 == 1 else -1
        return x > 0 and y > 0 and x % 4 == 1 and x * x - 2 * y * y == sign * l


def signed_prime(l: int) -> int:
    """(-1)^((l-1)/2) * l."""
    return l if l % 4 == 1 else -l


def _search_prime_rep(l: int) -> PrimeRep:
    target = signed_prime(l)
    # Nagell bound for x^2 - 2y^2 = N with fundamental unit 3+2sqrt2
    bound = math.isqrt(abs(target)) + 1
    for y in range(1, bound + 1):
        val = target + 2 * y * y
        if val <= 0:
            continue
        x = math.isqrt(val)
        if x * x == val:
            if x % 4 == 3:
                x, y = 3 * x + 4 * y, 2 * x + 3 * y
            return PrimeRep(l, x, y)
    raise ConsistencyFailure(f"no x^2 - 2y^2 = {target} found below y = {bound}")


_rep_cache: dict[int, PrimeRep] = {}
_rep_lock = threading.Lock()


def represent_prime(l: int) -> PrimeRep:
    """Pinned representation of a prime l = +-1 mod 8.

    The minimal positive solution of x^2 - 2y^2 = (-1)^((l-1)/2) l is
    taken and, if x = 3 mod 4, multiplied once by 3 + 2 sqrt2.
    """
    rep = _rep_cache.get(l)
    if rep is not None:
        return rep
    if l % 8 not in (1, 7) or not is_prime(l):
        raise NoRepresentation(f"{l} is not a prime congruent to +-1 mod 8")
    rep = _search_prime_rep(l)
    with _rep_lock:
        _rep_cache.setdefault(l, rep)
    return rep


def prime_element(p: int) -> QuadInt:
    """pi_p = x + y sqrt2 of norm (-1)^((p-1)/2) p."""
    return represent_prime(p).element


@dataclass(frozen=True)
class NormRepresentation:
    D: int
    u: int
    w: int

    @property
    def v(self) -> int:
        return self.u + self.w

    @property
    def element(self) -> QuadInt:
        return QuadInt(self.u, self.w)


def _as_factorization(D) -> Factorization:
    return D if isinstance(D, Factorization) else factor_squarefree(D)


def norm_element(D) -> QuadInt:
    """Element of norm D assembled from the pinned prime elements (before unit reduction)."""
    fac = _as_factorization(D)
    bad = [p for p in fac.odd_primes if p % 8 not in (1, 7)]
    if bad:
        raise NoRepresentation(f"{fac.value} has prime divisors {bad} not +-1 mod 8")
    z = TWO_ELT if fac.m else ONE
    for p in fac.odd_primes:
        z = z * prime_element(p)
    if (fac.n + fac.c) & 1:
        z = z * FUND_UNIT
    return z


def represent_norm(D) -> NormRepresentation:
    """u^2 - 2w^2 = D with u > 0, w >= 0 via the composition of prime elements."""
    fac = _as_factorization(D)
    z = unit_reduce(norm_element(fac))
    if z.norm() != fac.value:
        raise ConsistencyFailure(f"composed norm {z.norm()} != {fac.value}")
    return NormRepresentation(fac.value, z.a, z.b)


def represent_norm_direct(D: int) -> NormRepresentation:
    """Direct search oracle for u^2 - 2w^2 = D (u > 0, w >= 0)."""
    if D == 0:
        raise InvalidArgument("D must be nonzero")
    fac = _as_factorization(D)
    if any(p % 8 not in (1, 7) for p in fac.odd_primes):
        raise NoRepresentation(f"{D} is not a norm from Z[sqrt 2]")
    if D > 0:
        u = math.isqrt(D)
        if u * u < D:
            u += 1
        while True:
            r = u * u - D
            if not r & 1:
                w = math.isqrt(r // 2)
                if 2 * w * w == r:
                    return NormRepresentation(D, u, w)
            u += 1
    w = math.isqrt(-D // 2)
    while 2 * w * w < -D:
        w += 1
    while True:
        r = D + 2 * w * w
        u = math.isqrt(r)
        if u > 0 and u * u == r:
            return NormRepresentation(D, u, w)
        w += 1


def residue_mod_ideal(z: QuadInt, rep: PrimeRep) -> int:
    """Image of z in Z[sqrt2]/(x - y sqrt2) = Z/lZ."""
    return (z.a + z.b * rep.sqrt2_residue()) % rep.l


# -- on-disk cache of prime representations ---------------------------------

CACHE_ENV = "TAMEK2_PRIMEREP_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "tamek2" / "primereps.csv"


def _read_cache(path: Path) -> list[PrimeRep] | None:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["l", "x", "y"]:
                return None
            reps = [PrimeRep(int(l), int(x), int(y)) for l, x, y in reader]
    except (OSError, ValueError):
        return None
    return reps


def _write_cache(path: Path, reps: list[PrimeRep]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".primereps-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["l", "x", "y"])
            for rep in sorted(reps, key=lambda r: r.l):
                writer.writerow([rep.l, rep.x, rep.y])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_prime_rep_cache(limit: int, path: Path | None = None) -> bool:
    """Fill the in-memory table for all primes +-1 mod 8 below ``limit``.

    Reads ``path`` if it is present and covers the range with valid rows;
    otherwise regenerates and rewrites it atomically. Returns True when the
    file was used as-is.
    """
    path = Path(path) if path is not None else default_cache_path()
    wanted = [p for p in sieve_primes(limit) if p % 8 in (1, 7)]
    reps = _read_cache(path) if path.exists() else None
    if reps is not None:
        by_l = {r.l: r for r in reps}
        fresh = all(r.is_valid() and r == _search_prime_rep(r.l) for r in reps[:8]) and all(
            by_l.get(p) is not None and by_l[p].is_valid() for p in wanted
        )
        if fresh:
            with _rep_lock:
                for r in reps:
                    _rep_cache.setdefault(r.l, r)
            return True
    new = [represent_prime(p) for p in wanted]
    _write_cache(path, new)
    return False


def clear_prime_rep_memo() -> None:
    with _rep_lock:
        _rep_cache.clear()
