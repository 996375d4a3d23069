#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run as `python benchmarks/bench_kernels.py`.  Set COXCOH_DISABLE_NUMBA=1 to
confirm the fallback path is the one being dispatched.
"""

import random
import time

import numpy as np

from coxcoh import kernels


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_surviving_masks():
    rng = random.Random(7)
    t = 18
    var_masks = [rng.getrandbits(t) | 1 for _ in range(8)]
    rows = []
    fast, got_fast = timeit(kernels.surviving_masks, t, var_masks)
    slow, got_slow = timeit(kernels.surviving_masks_numpy, t, var_masks)
    assert np.array_equal(np.sort(got_fast), np.sort(got_slow))
    rows.append(("surviving_masks (t=18, 8 vars)", fast, slow))
    return rows


def bench_rank_mod_p():
    rng = np.random.default_rng(11)
    p = 2147483647
    rows = []
    for size in (100, 300):
        mat = rng.integers(-1, 2, size=(size, size), dtype=np.int64)
        fast, rf = timeit(kernels.rank_mod_p, mat, p)
        slow, rs = timeit(kernels.rank_mod_p_numpy, mat, p)
        assert rf == rs
        rows.append(("rank_mod_p %dx%d" % (size, size), fast, slow))
    return rows


def main():
    print("dispatched backend: %s" % kernels.backend_name())
    if kernels.HAVE_NUMBA:
        # trigger compilation outside the timed region
        kernels.surviving_masks(4, [1])
        kernels.rank_mod_p([[1, 0], [0, 1]], 97)
    rows = bench_surviving_masks() + bench_rank_mod_p()
    print("%-35s %12s %12s %8s" % ("kernel", "dispatched", "numpy", "speedup"))
    for name, fast, slow in rows:
        print("%-35s %10.4fs %10.4fs %7.1fx" % (name, fast, slow, slow / fast if fast else 0.0))


if __name__ == "__main__":
    main()
