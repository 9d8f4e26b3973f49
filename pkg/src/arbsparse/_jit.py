"""JIT switch for the numeric kernels.

Kernels are written in the numba-compatible subset of Python. Setting
``ARBSPARSE_DISABLE_JIT=1`` (or running without numba installed) runs the
same source as plain Python over numpy arrays.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("ARBSPARSE_DISABLE_JIT", "0").lower() in ("1", "true", "yes")

try:  # pragma: no cover - exercised implicitly by whichever mode is active
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

JIT_ENABLED = HAVE_NUMBA


def njit(func=None, *, cache=True):
    """Compile ``func`` with numba when enabled, otherwise return it unchanged.

    Self-recursive kernels must pass ``cache=False``: numba's on-disk cache
    crashes when reloading them.
    """
    if func is None:
        return lambda f: njit(f, cache=cache)
    if JIT_ENABLED:
        return numba.njit(cache=cache)(func)
    return func
