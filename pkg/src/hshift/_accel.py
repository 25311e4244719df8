"""Optional numba acceleration.

Set ``HSHIFT_DISABLE_NUMBA=1`` to run every kernel through its pure
Python/numpy path. The flag is read once, at import time. numba itself is
imported on the first call of a compiled kernel, so commands that never
reach a kernel do not pay for it.
"""

import functools
import importlib.util
import os

_flag = os.environ.get("HSHIFT_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag not in ("", "0", "false", "no")
NUMBA_AVAILABLE = importlib.util.find_spec("numba") is not None

USE_NUMBA = NUMBA_AVAILABLE and not NUMBA_DISABLED


class LazyJit:
    """Compile ``func`` with ``numba.njit`` on first call."""

    def __init__(self, func):
        functools.update_wrapper(self, func)
        self.py_func = func
        self._compiled = None

    def compiled(self):
        if self._compiled is None:
            import numba

            self._compiled = numba.njit(cache=True, fastmath=False)(self.py_func)
        return self._compiled

    def __call__(self, *args):
        return self.compiled()(*args)


def jit(func):
    """Lazily compiled ``numba.njit`` when acceleration is enabled, identity otherwise."""
    if USE_NUMBA:
        return LazyJit(func)
    return func
