"""Kernel backend selection: compiled extension when available, else pure Python.

`python -c "import gorbit; print(gorbit.kernel_backend())"` reports which one
is active.  Both expose the same four primitives (brk, ad_cols, dots_cols,
bareiss_ranks) and are interchangeable; benchmarks/bench_kernel.py compares
them head to head.
"""

from __future__ import annotations

try:
    from . import _ops_c as ops

    BACKEND = "c"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _ops_py as ops

    BACKEND = "python"

brk = ops.brk
ad_cols = ops.ad_cols
dots_cols = ops.dots_cols
bareiss_ranks = ops.bareiss_ranks


def kernel_backend() -> str:
    return BACKEND
