"""Backend selection for the hot kernels.

At import time this module picks the compiled extension ``_kernels_c`` when
it is available, otherwise the pure-Python twin ``_kernels_py``.  Setting
the environment variable ``PGIDEALS_PURE`` (to anything non-empty) forces
the pure backend.  The compiled kernels run on 64-bit integers, so calls
whose inputs could overflow are routed to the pure backend regardless of
the selection; results are identical either way.
"""

import os

from . import _kernels_py as _pure

try:
    from . import _kernels_c as _compiled
except ImportError:
    _compiled = None

if os.environ.get("PGIDEALS_PURE"):
    _active = _pure
else:
    _active = _compiled if _compiled is not None else _pure

BACKEND = "compiled" if _active is not _pure else "pure"

# Conservative per-argument cutoff keeping every intermediate of the
# compiled kernels inside int64 (counts are bounded by (bound+1)^3).
_SAFE = 1 << 20


def backend_name():
    return BACKEND


def count_colength(xcap, bound):
    if _active is not _pure and 0 <= bound <= _SAFE and xcap <= _SAFE:
        return _active.count_colength(xcap, bound)
    return _pure.count_colength(xcap, bound)


def count_weighted(xcap, wx, wy, wz, bound):
    if (
        _active is not _pure
        and 0 <= bound <= _SAFE
        and xcap <= _SAFE
        and max(wx, wy, wz) <= _SAFE
    ):
        return _active.count_weighted(xcap, wx, wy, wz, bound)
    return _pure.count_weighted(xcap, wx, wy, wz, bound)


def laufer_closure(diag, indptr, indices, mults, start, guard):
    if (
        _active is not _pure
        and guard <= _SAFE
        and all(-_SAFE <= d <= 0 for d in diag)
        and all(m <= _SAFE for m in mults)
        and len(diag) <= _SAFE
    ):
        return _active.laufer_closure(diag, indptr, indices, mults, start, guard)
    return _pure.laufer_closure(diag, indptr, indices, mults, start, guard)
