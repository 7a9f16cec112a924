"""Numba switch for the hot kernels.

Set ``ROMKIT_DISABLE_NUMBA=1`` before import to run every kernel through its
pure-numpy path.  The flag is read once; both paths are always importable so
the benchmark and the tests can compare them side by side.
"""
import os

_DISABLED = os.environ.get("ROMKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False
    _njit = None


def njit(*args, **kwargs):
    """``numba.njit`` when acceleration is on, otherwise a no-op decorator."""
    if HAS_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def use_numba():
    return HAS_NUMBA
