"""Timing comparison of the compiled and numpy kernel backends.

Runs the bilinear remap and the dilated stencil convolution on a
synthetic workload with both implementations, confirms the outputs are
bit-identical, and prints a table of best-of-N wall times.

Usage: python3 benchmarks/bench_kernels.py [--size 512] [--repeats 5]
"""

import argparse
import time

import numpy as np

from rigidwarp import _kernels_np

try:
    from rigidwarp import _kernels_cy
except ImportError:
    _kernels_cy = None


def make_workload(n, rng):
    src = np.ascontiguousarray(rng.uniform(0, 1, (n, n, 3)))
    valid = np.ascontiguousarray((rng.uniform(size=(n, n)) > 0.05)
                                 .astype(np.uint8))
    ys, xs = np.mgrid[0:n, 0:n].astype(float)
    # a mild swirl keeps the access pattern non-trivial
    cx = cy = (n - 1) / 2.0
    r = np.hypot(xs - cx, ys - cy)
    a = 0.4 * np.exp(-r / (0.5 * n))
    xs2 = cx + np.cos(a) * (xs - cx) - np.sin(a) * (ys - cy)
    ys2 = cy + np.sin(a) * (xs - cx) + np.cos(a) * (ys - cy)
    w = np.ascontiguousarray(rng.standard_normal((5, 5)))
    return src, valid, np.ascontiguousarray(xs2), np.ascontiguousarray(ys2), w


def best_time(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    src, valid, xs, ys, w = make_workload(args.size, rng)

    jobs = [
        ("remap %dx%dx3" % (args.size, args.size),
         lambda impl: impl.remap_bilinear(src, valid, xs, ys)),
        ("conv 5x5 d=2",
         lambda impl: impl.grid_convolve(src, valid, w, 2)),
    ]

    print("%-18s %12s %12s %9s" % ("kernel", "numpy", "compiled", "speedup"))
    for name, job in jobs:
        t_np, out_np = best_time(lambda: job(_kernels_np), args.repeats)
        if _kernels_cy is None:
            print("%-18s %10.1f ms %12s" % (name, 1e3 * t_np, "missing"))
            continue
        t_cy, out_cy = best_time(lambda: job(_kernels_cy), args.repeats)
        a, av = (np.asarray(x) for x in out_np)
        b, bv = (np.asarray(x) for x in out_cy)
        if not (np.array_equal(a, b) and np.array_equal(av, bv)):
            raise SystemExit("backend outputs differ on %s" % name)
        print("%-18s %10.1f ms %10.1f ms %8.1fx"
              % (name, 1e3 * t_np, 1e3 * t_cy, t_np / t_cy))
    if _kernels_cy is not None:
        print("outputs bit-identical across backends")


if __name__ == "__main__":
    main()
