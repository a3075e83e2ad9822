"""Numba dispatch.

Every hot kernel in :mod:`ilmt.kernels` has an ``@njit`` body and a pure-numpy
twin. Setting ``ILMT_NO_NUMBA=1`` (or running without numba installed) routes
all calls to the numpy twins.
"""
import os

DISABLED = os.environ.get("ILMT_NO_NUMBA", "").strip() not in ("", "0")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if not HAVE_NUMBA:  # pragma: no cover
        return func
    return numba.njit(cache=True)(func)


def resolve(backend):
    """Map a backend request (None, "numba", "numpy") to a concrete backend name."""
    if backend is None:
        return "numba" if USE_NUMBA else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def set_threads(k: int) -> int:
    """Size numba's thread pool (clamped to what numba was started with)."""
    if not HAVE_NUMBA:  # pragma: no cover
        return 1
    k = max(1, min(k, numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(k)
    return k
