"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``NPKOROVKIN_PURE=1``
to force the numpy fallback. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("NPKOROVKIN_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "pure"

pair_matrix = _impl.pair_matrix
lebesgue_sums = _impl.lebesgue_sums
weighted_pair_sum = _impl.weighted_pair_sum

__all__ = ["BACKEND", "pair_matrix", "lebesgue_sums", "weighted_pair_sum"]
