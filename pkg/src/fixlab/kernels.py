"""Kernel dispatch: compiled int64 kernels when built, Python otherwise.

Set ``FIXLAB_PURE_PYTHON=1`` to force the fallback.  Even with the
compiled module loaded, inputs whose sums could overflow int64 are routed
to the Python kernels, which use unbounded integers.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("FIXLAB_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_INT64_SAFE = 2**62


def _fits(rows, weights, extra=()) -> bool:
    if _compiled is None:
        return False
    if not weights:
        return True
    span = 0
    for group in (rows, extra):
        for r in group:
            for v in r:
                if abs(v) > span:
                    span = abs(v)
    # each |a - b| <= 2 * span; a row sum has len(weights) terms
    return 2 * span * max(weights) * len(weights) < _INT64_SAFE


def max_pairwise_l1(rows, weights):
    """Largest weighted L1 distance between two rows, with its indices."""
    if len(rows) < 2:
        return 0, 0, 0
    if _fits(rows, weights):
        return _compiled.max_pairwise_l1(rows, weights)
    return _pykernels.max_pairwise_l1(rows, weights)


def center_max_l1(centers, rows, weights):
    """For each center, its largest weighted L1 distance to any row."""
    if not centers:
        return []
    if _fits(rows, weights, centers):
        return _compiled.center_max_l1(centers, rows, weights)
    return _pykernels.center_max_l1(centers, rows, weights)


def first_return(p: int, q: int, budget: int) -> int:
    """Steps for ``x -> x + p (mod q)`` to come back to 0, or -1."""
    if _compiled is not None and 0 <= p < _INT64_SAFE and 0 < q < 2**31 and budget < _INT64_SAFE:
        return _compiled.first_return(p, q, budget)
    return _pykernels.first_return(p, q, budget)
