"""Numba vs pure-numpy timings for the two hot kernels (Jacobi eigensolve and
Bunch-Kaufman LDL^T).

    python benchmarks/bench_kernels.py [--sizes 32 64 128] [--repeat 3]

The numba column excludes compilation (one warm-up call per kernel). Both
backends are checked against each other before timing.
"""

import argparse
import time

import numpy as np

from dtnlab import kernels


def _best(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _indefinite(n, rng):
    a = rng.standard_normal((n, n))
    return a + a.T


def bench(sizes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        a = _indefinite(n, rng)
        tol = 1e-13 * np.linalg.norm(a)
        # warm-up / compile
        kernels.jacobi_eigh(a[:4, :4], tol, 40, use_numba=True)
        kernels.bk_factor(a[:4, :4], use_numba=True)
        w_nb = kernels.jacobi_eigh(a, tol, 40, use_numba=True)[0]
        w_np = kernels.jacobi_eigh(a, tol, 40, use_numba=False)[0]
        assert np.allclose(w_nb, w_np, atol=1e-9 * np.abs(w_np).max())
        for name, fn in (("jacobi", lambda u: kernels.jacobi_eigh(a, tol, 40, use_numba=u)),
                         ("bunch_kaufman", lambda u: kernels.bk_factor(a, use_numba=u))):
            t_nb = _best(lambda: fn(True), repeat)
            t_np = _best(lambda: fn(False), repeat)
            rows.append((name, n, t_nb, t_np, t_np / t_nb))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    print(f"{'kernel':<14}{'n':>6}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, n, t_nb, t_np, ratio in bench(args.sizes, args.repeat):
        print(f"{name:<14}{n:>6}{t_nb:>12.4f}{t_np:>12.4f}{ratio:>10.1f}")


if __name__ == "__main__":
    main()
