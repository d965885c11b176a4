"""
Compiled (numba) versus pure-numpy kernels.

Times the divided-difference grid tensor and the arity-two contraction and
adjoint at a few grid sizes, checks that both paths agree, and prints one row
per (kernel, N).

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from divschur import _accel, _kernels, funcs


def best_of(fn, repeat):
    fn()  # warm up (and compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def both(fn, repeat):
    out = {}
    for flag in (True, False):
        prev = _accel.use_numba(flag)
        try:
            out[flag] = (best_of(fn, repeat), fn())
        finally:
            _accel.use_numba(prev)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    f = funcs.bump(4.0, 3.0)
    print(f"{'kernel':<14}{'N':>5}{'numba [ms]':>14}{'numpy [ms]':>14}{'speedup':>10}{'max diff':>12}")
    for N in (16, 32, 64):
        grid = np.arange(N) * 8.0 / N
        table = np.stack([f.eval(grid, d) for d in range(f.order + 1)])
        x = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        y = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        B = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        psi = funcs.divdiff_tensor(f, grid, 2).astype(complex)
        cases = {
            "divdiff k=2": lambda: _kernels.divdiff_tensor(grid, table, 2),
            "divdiff k=3": lambda: _kernels.divdiff_tensor(grid, table, 3),
            "contract2": lambda: _kernels.contract2(psi, x, y),
            "adjoint2": lambda: _kernels.adjoint2(psi, [x, y], 0, B),
        }
        for name, fn in cases.items():
            r = both(fn, args.repeat)
            (tn, vn), (tp, vp) = r[True], r[False]
            diff = float(np.abs(np.asarray(vn) - np.asarray(vp)).max())
            print(f"{name:<14}{N:>5}{tn * 1e3:>14.3f}{tp * 1e3:>14.3f}{tp / tn:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
