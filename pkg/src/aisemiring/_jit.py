"""Optional numba support.

Set ``AISEMIRING_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is installed. The flag is read once, at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

DISABLE_NUMBA = os.environ.get("AISEMIRING_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLE_NUMBA

_njit_defaults = {"nogil": True, "cache": True}


def njit(func):
    """Compile ``func`` with numba if it is installed, else return None.

    Returning None rather than ``func`` keeps callers honest: the dispatch
    layer must fall back to the numpy twin explicitly.
    """
    if not HAVE_NUMBA:
        return None
    return numba.njit(**_njit_defaults)(func)
