"""Backend selection for the compiled kernels.

Numba is used when it imports cleanly and ``WARPWIN_DISABLE_NUMBA`` is unset
(or set to ``0``). Setting the flag forces the pure-numpy kernels, which is
handy for debugging and for the backend benchmark.
"""
import os

_flag = os.environ.get("WARPWIN_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _disabled


def njit(func):
    """Compile ``func`` in nopython mode, or return it untouched without numba."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
