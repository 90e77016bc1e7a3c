"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_backends.py [--n 1000000] [--repeat 5]

Times the three hot kernels on random positive arrays and reports the
median wall time per call for each backend plus the speedup.
"""

import argparse
import statistics
import time

import numpy as np

from meandiv import _core_py as pure

try:
    from meandiv import _core as compiled
except ImportError:
    compiled = None


def time_call(fn, *args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    p = np.exp(rng.uniform(-3, 3, args.n))
    q = np.exp(rng.uniform(-3, 3, args.n))
    w = np.exp(rng.uniform(-1, 1, args.n))
    x = rng.uniform(-1, 1, args.n)

    cases = [
        ("kahan_sum", lambda mod: time_call(mod.kahan_sum, x, repeat=args.repeat)),
        ("weighted_power_terms(1,-1,0.3)",
         lambda mod: time_call(mod.weighted_power_terms, 1.0, -1.0, 0.3, p, q, w,
                               repeat=args.repeat)),
        ("power_limit_terms(2,0)",
         lambda mod: time_call(mod.power_limit_terms, 2.0, 0.0, p, q, w,
                               repeat=args.repeat)),
    ]

    print(f"n = {args.n}, repeat = {args.repeat} (median reported)")
    header = f"{'kernel':36s} {'python':>10s} {'cython':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, runner in cases:
        t_py = runner(pure)
        if compiled is None:
            print(f"{name:36s} {t_py * 1e3:9.2f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_cy = runner(compiled)
        print(f"{name:36s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms {t_py / t_cy:7.2f}x")
    if compiled is None:
        print("compiled extension not available; built fallback numbers only")


if __name__ == "__main__":
    main()
