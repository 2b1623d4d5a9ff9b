"""Kernel backend selection.

Hot kernels are written once in a numba-compatible numpy style.  When numba
is importable and ``SIMPLICIAL_QCQP_BACKEND`` is not ``numpy`` they are
compiled with ``numba.njit``; otherwise the same functions run as plain numpy.
The flag is read once, at import time.
"""
import os

_requested = os.environ.get("SIMPLICIAL_QCQP_BACKEND", "numba").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

if _requested not in ("numba", "numpy"):
    raise ImportError(
        f"SIMPLICIAL_QCQP_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

BACKEND = "numba" if (_requested == "numba" and _numba is not None) else "numpy"


def jit(fn):
    """``numba.njit(cache=True)`` on the numba backend, identity otherwise."""
    if BACKEND == "numba":
        return _numba.njit(cache=True)(fn)
    return fn
