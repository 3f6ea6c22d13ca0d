"""Hot loops, compiled with numba when available.

Set ``IDGRAPHS_DISABLE_NUMBA=1`` to force the numpy/Python reference path.
Both implementations stay importable as :data:`numpy_impl` and (when numba
is installed) :data:`numba_impl` so they can be compared directly.
"""

import os

from . import _np as numpy_impl

DISABLE_ENV = "IDGRAPHS_DISABLE_NUMBA"

numba_impl = None
if os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on"):
    try:
        from . import _nb as numba_impl
    except ImportError:  # numba not installed
        numba_impl = None

_impl = numba_impl if numba_impl is not None else numpy_impl
BACKEND = "numba" if numba_impl is not None else "numpy"

min_pair_symdiff = _impl.min_pair_symdiff
count_violations = _impl.count_violations
count_identifying = _impl.count_identifying
anneal_ell1 = _impl.anneal_ell1

__all__ = [
    "BACKEND",
    "numpy_impl",
    "numba_impl",
    "min_pair_symdiff",
    "count_violations",
    "count_identifying",
    "anneal_ell1",
]
