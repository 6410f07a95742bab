"""Compare the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat 5]``.
"""

import argparse
import importlib
import math
import time

import numpy as np

from npkorovkin import _kernels_py

try:
    compiled = importlib.import_module("npkorovkin._kernels")
except ImportError:
    compiled = None

CASES = [(10, 100_000), (101, 100_000), (543, 100_000)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<18}{'n':>6}{'points':>9}{'pure [s]':>11}{'compiled [s]':>14}{'speedup':>9}{'max diff':>11}")
    for n, m in CASES:
        theta = np.linspace(0.0, math.pi, m)
        vals = np.cos(np.arange(1, n + 1))
        for name, call in (("lebesgue_sums", lambda mod: mod.lebesgue_sums(n, theta)),
                           ("weighted_pair_sum", lambda mod: mod.weighted_pair_sum(n, vals, theta))):
            tp = best_of(lambda: call(_kernels_py), args.repeat)
            if compiled is None:
                print(f"{name:<18}{n:>6}{m:>9}{tp:>11.4f}{'-':>14}{'-':>9}{'-':>11}")
                continue
            tc = best_of(lambda: call(compiled), args.repeat)
            a, b = call(_kernels_py), call(compiled)
            diff = max(float(np.max(np.abs(np.asarray(x) - np.asarray(y))))
                       for x, y in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)))
            print(f"{name:<18}{n:>6}{m:>9}{tp:>11.4f}{tc:>14.4f}{tp / tc:>9.1f}{diff:>11.1e}")


if __name__ == "__main__":
    main()
