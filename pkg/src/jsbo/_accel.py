"""Kernel selection: compiled extension if available, pure Python otherwise.

Set JSBO_PURE=1 to force the pure-Python kernels (used by the benchmark and
as an escape hatch on platforms without a C compiler).
"""

import os

if os.environ.get("JSBO_PURE") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND
mul_terms = kernels.mul_terms
iadd_scaled = kernels.iadd_scaled
iadd_terms = kernels.iadd_terms
scale_terms = kernels.scale_terms
