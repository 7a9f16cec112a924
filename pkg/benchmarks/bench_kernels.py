"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--max-log-n 16]

Both implementations are imported directly from ``romkit._kernels``, so the
comparison runs in one process regardless of ROMKIT_DISABLE_NUMBA.
"""
import argparse
import time

import numpy as np

from romkit import _kernels as K
from romkit._accel import HAS_NUMBA
from romkit.oracle import dense_reference
from romkit.transforms import StructuredOrthogonal


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_fwht(args, rng):
    print(f"{'kernel':<14}{'n':>8}{'batch':>7}{'numba s':>12}{'numpy s':>12}{'speedup':>9}")
    for log_n in range(8, args.max_log_n + 1, 2):
        n = 1 << log_n
        batch = max(1, (1 << 20) // n)
        a = rng.standard_normal((batch, n))
        t_nb = best_of(lambda: K._fwht_rows_nb(a.copy()), args.repeat)
        t_np = best_of(lambda: K._fwht_rows_np(a.copy()), args.repeat)
        print(f"{'fwht':<14}{n:>8}{batch:>7}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}")


def bench_rows(args, rng):
    for log_n in (10, 14):
        n = 1 << log_n
        v = rng.standard_normal(n)
        rows = np.sort(rng.choice(n, size=n // 4, replace=False)).astype(np.int64)
        for paired in (True, False):
            t_nb = best_of(lambda: K._hadamard_rows_nb(v, rows, paired), args.repeat)
            t_np = best_of(lambda: K._hadamard_rows_np(v, rows, paired), args.repeat)
            name = "rows-paired" if paired else "rows-naive"
            print(f"{name:<14}{n:>8}{len(rows):>7}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}")


def bench_brute_force(args, rng):
    import itertools
    n, m = 4, 2
    S = dense_reference(StructuredOrthogonal.hadamard(n)).astype(np.complex128)
    vals = np.array([[1, -1]] * 3, dtype=np.complex128)
    counts = np.array([2, 2, 2], dtype=np.int64)
    sel = np.array(list(itertools.combinations(range(n), m)), dtype=np.int64)
    x, y = rng.standard_normal(n), rng.standard_normal(n)
    call = lambda f: f(S, vals, counts, x, y, sel, n / m, float(x @ y))
    t_nb = best_of(lambda: call(K._brute_force_nb), args.repeat)
    t_np = best_of(lambda: call(K._brute_force_np), args.repeat)
    print(f"{'brute-force':<14}{n:>8}{m:>7}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-log-n", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not HAS_NUMBA:
        print("numba unavailable (or disabled); both columns time the numpy path")
    rng = np.random.default_rng(args.seed)
    # compile once so the first timing is not JIT time
    K._fwht_rows_nb(np.zeros((1, 4)))
    K._hadamard_rows_nb(np.zeros(4), np.zeros(1, dtype=np.int64), True)
    bench_fwht(args, rng)
    bench_rows(args, rng)
    bench_brute_force(args, rng)


if __name__ == "__main__":
    main()
