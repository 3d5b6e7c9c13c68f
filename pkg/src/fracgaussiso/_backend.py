"""Backend selection: compiled kernels when available, numpy fallback otherwise.

Set ``FGI_BACKEND=python`` to force the fallback (useful for benchmarking and
for cross-checking the two implementations).
"""
from __future__ import annotations

import os

if os.environ.get("FGI_BACKEND", "").lower() == "python":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND_NAME

coeff_antideriv_table = kernels.coeff_antideriv_table
hermite_weighted_series = kernels.hermite_weighted_series
halfspace_series_sum = kernels.halfspace_series_sum
