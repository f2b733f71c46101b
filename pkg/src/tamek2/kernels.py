"""Backend selection for the hot kernels.

The compiled extension is used when it imports cleanly; otherwise the
pure-Python implementation is used.
"""

from __future__ import annotations

from tamek2 import _pykernels

try:
    from tamek2 import _kernels as _impl
except ImportError:
    _impl = _pykernels
    BACKEND = "python"
else:
    BACKEND = "cython"

jacobi = _impl.jacobi
f2_rank = _impl.f2_rank
hilbert_odd = _impl.hilbert_odd
hilbert_two = _impl.hilbert_two


def use_backend(name: str) -> None:
    """Switch the active backend ("cython" or "python") for this process."""
    global BACKEND, jacobi, f2_rank, hilbert_odd, hilbert_two
    if name == "python":
        impl = _pykernels
    elif name == "cython":
        from tamek2 import _kernels as impl
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    jacobi, f2_rank = impl.jacobi, impl.f2_rank
    hilbert_odd, hilbert_two = impl.hilbert_odd, impl.hilbert_two


__all__ = ["BACKEND", "jacobi", "f2_rank", "hilbert_odd", "hilbert_two", "use_backend"]
