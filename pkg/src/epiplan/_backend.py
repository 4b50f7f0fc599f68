"""Select the numeric kernel backend at import time.

The compiled Cython extension is preferred; the pure-Python twin is used
when the extension is unavailable or when ``EPIPLAN_PURE_PYTHON`` is set
to a non-empty value other than ``0``.
"""

import os

_force_pure = os.environ.get("EPIPLAN_PURE_PYTHON", "") not in ("", "0")

if _force_pure:
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
