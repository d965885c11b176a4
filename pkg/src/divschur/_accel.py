"""Numba switch.

Set ``DIVSCHUR_DISABLE_NUMBA=1`` to force the pure-numpy kernels. The flag is
read once at import time; :func:`use_numba` can flip it afterwards (tests and
the benchmark do this).
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    HAS_NUMBA = False

_enabled = HAS_NUMBA and os.environ.get("DIVSCHUR_DISABLE_NUMBA", "0").lower() in _FALSY

numba_default = {
    "nogil": True,
    "cache": True,
    "fastmath": False,
    "boundscheck": False,
}


def njit(func):
    """Compile with the project defaults, or return ``func`` untouched."""
    if not HAS_NUMBA:
        return func
    return numba.njit(**numba_default)(func)


def numba_enabled():
    return _enabled


def use_numba(flag):
    """Enable or disable the compiled kernels; returns the previous state."""
    global _enabled
    prev = _enabled
    _enabled = bool(flag) and HAS_NUMBA
    return prev
