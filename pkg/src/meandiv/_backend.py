"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the numpy
implementation.  Set ``MEANDIV_PURE_PYTHON=1`` to force the fallback
(used by the backend-equivalence tests and the benchmark).
"""

import os

if os.environ.get("MEANDIV_PURE_PYTHON"):
    from meandiv import _core_py as kernels
else:
    try:
        from meandiv import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        from meandiv import _core_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND
kahan_sum = kernels.kahan_sum
weighted_power_terms = kernels.weighted_power_terms
power_limit_terms = kernels.power_limit_terms
