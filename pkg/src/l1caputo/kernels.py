"""Backend selection for the O(N^2) L1 history sums.

The compiled extension is used when importable; set ``L1CAPUTO_PURE_PYTHON=1``
to force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("L1CAPUTO_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

l1_history = _impl.l1_history
l1_history_at = _impl.l1_history_at
fode_march = _impl.fode_march

__all__ = ["BACKEND", "l1_history", "l1_history_at", "fode_march"]
