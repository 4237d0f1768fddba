"""Integer-table kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time. Set ``FO2ALT_DISABLE_NUMBA=1``
to force the numpy path (useful for debugging and for platforms without
numba). Both backends are importable directly as ``numpy_backend`` and
``numba_backend`` (the latter is ``None`` when numba is missing).
"""

import os

from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba is an install dependency
    numba_backend = None

OP_VAR, OP_MUL, OP_OMEGA = numpy_backend.OP_VAR, numpy_backend.OP_MUL, numpy_backend.OP_OMEGA

_disabled = os.environ.get("FO2ALT_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

backend = numpy_backend if (_disabled or numba_backend is None) else numba_backend
BACKEND_NAME = "numpy" if backend is numpy_backend else "numba"

is_associative = backend.is_associative
omega_table = backend.omega_table
ideal_masks = backend.ideal_masks
first_mismatch = backend.first_mismatch
orders_agree = backend.orders_agree

__all__ = [
    "BACKEND_NAME",
    "OP_MUL",
    "OP_OMEGA",
    "OP_VAR",
    "first_mismatch",
    "ideal_masks",
    "is_associative",
    "numba_backend",
    "numpy_backend",
    "omega_table",
    "orders_agree",
]
