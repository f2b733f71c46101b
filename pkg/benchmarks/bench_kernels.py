"""Compiled vs pure-Python kernels: micro timings and one end-to-end survey.

    python3 benchmarks/bench_kernels.py [--max 20000000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time
import timeit

from tamek2 import _pykernels, kernels
from tamek2.survey import run_survey
from tamek2.zsqrt2 import clear_prime_rep_memo


def _inputs(n: int = 2000, seed: int = 1):
    rng = random.Random(seed)
    odd = [rng.randrange(3, 10**9) | 1 for _ in range(n)]
    pairs = [(rng.randint(-(10**9), 10**9) or 1, q) for q in odd]
    units = [(rng.randrange(1, 10**6) * 2 + 1, rng.randrange(1, 10**6) * 2 + 1) for _ in range(n)]
    mats = [[rng.getrandbits(4) for _ in range(4)] for _ in range(n)]
    primes = [17, 41, 73, 89, 97, 113, 137, 193, 233, 241]
    odd_cases = [(a, b, rng.choice(primes)) for (a, _), (b, _) in zip(pairs, units)]
    return pairs, units, mats, odd_cases


def micro(repeat: int) -> list[tuple[str, float, float]]:
    pairs, units, mats, odd_cases = _inputs()
    from tamek2 import _kernels

    jobs = {
        "jacobi": lambda m: [m.jacobi(a, q) for a, q in pairs],
        "hilbert_two": lambda m: [m.hilbert_two(a, b) for a, b in units],
        "hilbert_odd": lambda m: [m.hilbert_odd(a, b, p) for a, b, p in odd_cases],
        "f2_rank": lambda m: [m.f2_rank(rows, 4) for rows in mats],
    }
    out = []
    for name, fn in jobs.items():
        assert fn(_kernels) == fn(_pykernels), name
        t_c = min(timeit.repeat(lambda: fn(_kernels), number=5, repeat=repeat))
        t_p = min(timeit.repeat(lambda: fn(_pykernels), number=5, repeat=repeat))
        out.append((name, t_c, t_p))
    return out


def end_to_end(max_d: int) -> dict[str, tuple[float, dict]]:
    out = {}
    for backend in ("python", "cython"):
        kernels.use_backend(backend)
        clear_prime_rep_memo()
        start = time.perf_counter()
        tally, _ = run_survey(50881, max_d, jobs=1)
        out[backend] = (time.perf_counter() - start, dict(tally.counts))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max", type=int, default=20_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"{'kernel':<12} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, t_c, t_p in micro(args.repeat):
        print(f"{name:<12} {t_c:>10.4f} {t_p:>10.4f} {t_p / t_c:>7.1f}x")

    runs = end_to_end(args.max)
    assert runs["python"][1] == runs["cython"][1], "backends disagree on the census"
    print()
    print(f"survey [50881, {args.max}) jobs=1")
    for backend, (secs, counts) in runs.items():
        print(f"  {backend:<7} {secs:7.2f} s  counts={counts}")


if __name__ == "__main__":
    main()
