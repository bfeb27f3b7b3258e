#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Runs the valuation scan and the implication-table kernel on the same
inputs through both implementations and prints a timing table.  Invoke
from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from medlat import kernels
from medlat.algebra import bn
from medlat.logic import axiom, compile_formula, variables


def timed(fn, *args, repeat: int) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_first_fail(repeat: int):
    rows = []
    cases = [("kp", bn(3)), ("kp", bn(4)), ("lin", bn(4)), ("jan", bn(5))]
    for name, a in cases:
        f = axiom(name)
        k = len(variables(f))
        ops, args = compile_formula(f, a, variables(f))
        total = a.size ** k
        t_np, r_np = timed(kernels._first_fail_numpy, ops, args, k, a.size,
                           a.join, a.meet, a.imp, a.bottom, 0, total,
                           repeat=repeat)
        row = {
            "kernel": "first_fail", "case": f"{name} on {a.provenance}",
            "valuations": total, "numpy_s": t_np, "numba_s": None,
        }
        if kernels.HAVE_NUMBA:
            # one warm-up call so compilation is not timed
            kernels._first_fail_jit(ops, args, k, a.size, a.join, a.meet,
                                    a.imp, a.bottom, 0, min(total, 10))
            t_jit, r_jit = timed(kernels._first_fail_jit, ops, args, k,
                                 a.size, a.join, a.meet, a.imp, a.bottom,
                                 0, total, repeat=repeat)
            assert int(r_jit) == int(r_np), "backends disagree"
            row["numba_s"] = t_jit
        rows.append(row)
    return rows


def bench_imp_masks(repeat: int):
    rows = []
    for n in (3, 4, 5):
        a = bn(n)
        masks, up = a.open_masks, a.poset.up_masks
        t_np, r_np = timed(kernels._imp_masks_numpy, masks, up, repeat=repeat)
        row = {
            "kernel": "imp_masks", "case": a.provenance,
            "valuations": a.size * a.size, "numpy_s": t_np, "numba_s": None,
        }
        if kernels.HAVE_NUMBA:
            kernels._imp_masks_jit(masks[:2], up)
            t_jit, r_jit = timed(kernels._imp_masks_jit, masks, up,
                                 repeat=repeat)
            assert (r_jit == r_np).all(), "backends disagree"
            row["numba_s"] = t_jit
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()

    print(f"numba backend available: {kernels.HAVE_NUMBA}")
    rows = bench_first_fail(opts.repeat) + bench_imp_masks(opts.repeat)
    header = f"{'kernel':<12}{'case':<22}{'items':>10}{'numpy':>10}{'numba':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for r in rows:
        numba = f"{r['numba_s']:.3f}s" if r["numba_s"] is not None else "-"
        speed = (f"{r['numpy_s'] / r['numba_s']:.1f}x"
                 if r["numba_s"] else "-")
        print(f"{r['kernel']:<12}{r['case']:<22}{r['valuations']:>10}"
              f"{r['numpy_s']:>9.3f}s{numba:>10}{speed:>9}")


if __name__ == "__main__":
    main()
