"""Kernel backend selection: compiled extension when present, numpy otherwise.

Set BMFORGE_PURE=1 to force the numpy fallback (used by the parity tests and
the benchmark).
"""

import os

from . import _refkernels

if os.environ.get("BMFORGE_PURE") == "1":
    _impl = _refkernels
    BACKEND = "numpy"
else:
    try:
        from . import _fastkernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _refkernels
        BACKEND = "numpy"


def sandwich_objective(params, kv, kn, kh, lc, sign):
    import numpy as np
    return _impl.sandwich_objective(
        np.ascontiguousarray(params, dtype=float),
        np.ascontiguousarray(kv, dtype=float),
        np.ascontiguousarray(kn, dtype=float),
        np.ascontiguousarray(kh, dtype=float),
        np.ascontiguousarray(lc, dtype=float),
        float(sign),
    )


raw_objective = _impl.sandwich_objective


reference_objective = _refkernels.sandwich_objective
BIG = _refkernels.BIG
