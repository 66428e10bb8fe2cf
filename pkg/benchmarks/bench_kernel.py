"""Head-to-head benchmark of the two kernel backends.

Usage: python benchmarks/bench_kernel.py [--repeat N]

Workloads mirror the hot paths: dense brackets and ad-matrices on the F4
compact algebra (dimension 52) and rank elimination on feasibility-sized
integer systems.  Both backends compute identical exact results; only the
wall clock differs.
"""

from __future__ import annotations

import argparse
import random
import time

from gorbit import _ops_py
from gorbit.chevalley import build_compact_algebra
from gorbit.rootsys import RootSystemType, build_root_system

try:
    from gorbit import _ops_c
except ImportError:
    _ops_c = None


def bench(fn, *args, repeat: int) -> float:
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat * 1e3


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=100)
    args = ap.parse_args()

    alg = build_compact_algebra(build_root_system(RootSystemType("F", 4)))
    offs, tgts, cfs = alg.flat_table()
    dim = alg.dim
    rng = random.Random(42)
    x = [rng.randint(-50, 50) for _ in range(dim)]
    y = [rng.randint(-50, 50) for _ in range(dim)]
    w = [rng.randint(-9, 9) for _ in range(dim)]
    sys_rows = [[rng.randint(-30, 30) for _ in range(41)] for _ in range(dim)]

    backends = [("python", _ops_py)] + ([("c", _ops_c)] if _ops_c else [])
    workloads = [
        ("brk (dense x dense, F4)", lambda ops: ops.brk(offs, tgts, cfs, dim, x, y)),
        ("ad_cols (F4)", lambda ops: ops.ad_cols(offs, tgts, cfs, dim, x)),
        (
            "dots_cols (52 cols)",
            lambda ops: ops.dots_cols(ops.ad_cols(offs, tgts, cfs, dim, x), dim, w),
        ),
        ("bareiss_ranks (52x40)", lambda ops: ops.bareiss_ranks(sys_rows, 40)),
    ]

    print(f"{'workload':30s}" + "".join(f"{name:>12s}" for name, _ in backends) + f"{'speedup':>10s}")
    for label, work in workloads:
        times = []
        for _, ops in backends:
            times.append(bench(work, ops, repeat=args.repeat))
        cols = "".join(f"{t:10.3f}ms" for t in times)
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) == 2 else "       -"
        print(f"{label:30s}{cols}{speed}")

    if _ops_c is None:
        print("\ncompiled backend unavailable; showing pure Python only")


if __name__ == "__main__":
    main()
