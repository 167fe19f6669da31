"""Kernel selection: the compiled core when importable, Python otherwise.

Set ``TORUS_SPLIT_KERNELS=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
coset_order_counts = _kernels_py.coset_order_counts
count_cycle_fixed = _kernels_py.count_cycle_fixed

if os.environ.get("TORUS_SPLIT_KERNELS", "auto") != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        BACKEND = "cython"

        # products stay below 2**62 when every operand is below 2**31
        def coset_order_counts(adj, d, box):
            if d >= 1 << 31:
                return _kernels_py.coset_order_counts(adj, d, box)
            return _compiled.coset_order_counts(adj, d, box)

        def count_cycle_fixed(M, q, signs):
            if M >= 1 << 31:
                return _kernels_py.count_cycle_fixed(M, q, signs)
            return _compiled.count_cycle_fixed(M, q, signs)

__all__ = ["BACKEND", "coset_order_counts", "count_cycle_fixed"]
