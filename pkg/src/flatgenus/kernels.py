"""Kernel selection: compiled extension if available, pure Python otherwise.

Set FLATGENUS_PURE=1 to force the pure-Python kernel (used by the benchmark
and by tests that compare the two backends).
"""
from __future__ import annotations

import os

from . import _enum_py

if os.environ.get("FLATGENUS_PURE"):
    _impl = _enum_py
    BACKEND = "pure"
else:
    try:
        from . import _enum_fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _enum_py
        BACKEND = "pure"


def short_coeff_vectors(gram_rows, bound_num, bound_den):
    """Nonzero coefficient vectors (up to sign) with x*A*x^T <= num/den, sorted."""
    return _impl.short_coeff_vectors(gram_rows, bound_num, bound_den)
