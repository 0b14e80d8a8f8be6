"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``DDFKIT_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""
import os

from . import _kernels_py

if os.environ.get("DDFKIT_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

pair_difference_counts = _impl.pair_difference_counts
correlation_table = _impl.correlation_table
relabel_first_occurrence = _impl.relabel_first_occurrence
affine_search = _impl.affine_search
min_pairwise_distance = _impl.min_pairwise_distance

__all__ = [
    "BACKEND",
    "pair_difference_counts",
    "correlation_table",
    "relabel_first_occurrence",
    "affine_search",
    "min_pairwise_distance",
]
