"""Optional numba compilation.

Set ``BLOCKSPECTRUM_NO_NUMBA=1`` to run every kernel as plain Python over
numpy arrays (same source, no JIT).  Compiled kernels keep the original
function on ``.py_func`` so both paths can be compared in one process.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("BLOCKSPECTRUM_NO_NUMBA", "0") in ("", "0")


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def python_impl(fn):
    return getattr(fn, "py_func", fn)
