"""Numba shim.

Kernels are compiled with numba unless ``RAINBOW_KIT_DISABLE_JIT`` is set to a
truthy value or numba cannot be imported; in either case the plain Python
implementations are used instead.
"""
import os

_FLAG = os.environ.get("RAINBOW_KIT_DISABLE_JIT", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("jit disabled by RAINBOW_KIT_DISABLE_JIT")
    from numba import njit as _njit

    HAVE_JIT = True
except ImportError:
    _njit = None
    HAVE_JIT = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise a passthrough decorator."""
    if HAVE_JIT:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def jit_enabled():
    return HAVE_JIT
