import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamek2 import _pykernels, kernels
from tamek2.arith import sieve_primes

from oracles import f2_rank_dense

compiled = pytest.importorskip("tamek2._kernels")

PRIMES = [p for p in sieve_primes(400) if p > 2]
big = st.integers(min_value=-(2**80), max_value=2**80).filter(lambda n: n != 0)
small = st.integers(min_value=-(10**9), max_value=10**9).filter(lambda n: n != 0)


def test_compiled_backend_selected():
    assert kernels.BACKEND == "cython"


@given(st.one_of(small, big), st.integers(min_value=1, max_value=2**70).map(lambda q: 2 * q + 1))
def test_jacobi_parity(a, q):
    assert compiled.jacobi(a, q) == _pykernels.jacobi(a, q)


@given(st.one_of(small, big), st.one_of(small, big))
def test_hilbert_two_parity(a, b):
    assert compiled.hilbert_two(a, b) == _pykernels.hilbert_two(a, b)


@given(st.one_of(small, big), st.one_of(small, big), st.sampled_from(PRIMES))
def test_hilbert_odd_parity(a, b, p):
    assert compiled.hilbert_odd(a, b, p) == _pykernels.hilbert_odd(a, b, p)


@given(st.integers(1, 70).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 2**n - 1), max_size=70))))
def test_f2_rank_parity(args):
    ncols, rows = args
    assert compiled.f2_rank(rows, ncols) == _pykernels.f2_rank(rows, ncols)


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=6))
def test_f2_rank_matches_dense_elimination(rows):
    bits = [sum(b << j for j, b in enumerate(r)) for r in rows]
    assert _pykernels.f2_rank(bits, 5) == f2_rank_dense(rows)


def test_use_backend_switches_and_restores():
    try:
        kernels.use_backend("python")
        assert kernels.BACKEND == "python" and kernels.jacobi is _pykernels.jacobi
    finally:
        kernels.use_backend("cython")
    assert kernels.BACKEND == "cython"
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_fallback_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['tamek2._kernels'] = None\n"
        "import tamek2\n"
        "from tamek2.hk_matrix import four_rank_k2\n"
        "print(tamek2.BACKEND, four_rank_k2(50881).four_rank)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert proc.stdout.split() == ["python", "1"]
