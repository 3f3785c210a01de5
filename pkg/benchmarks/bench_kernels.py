"""Compare the compiled kernel backend against the NumPy fallback.

Runs the Bessel evaluations and the mode-grid synthesis on both
backends, checks they agree bitwise, and reports best-of-N timings.

    python3 benchmarks/bench_kernels.py [--points N] [--grid N] [--repeat N]
"""

import argparse
import time

import numpy as np

from sawcavity.kernels import mode_grid
from sawcavity.kernels import pure


def _load_compiled():
    try:
        from sawcavity.kernels import _compiled
    except ImportError:
        return None
    return _compiled


def _best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _row(name, t_pure, t_fast):
    ratio = t_pure / t_fast if t_fast > 0 else float("inf")
    print(f"{name:<24} {t_pure * 1e3:>10.2f} ms {t_fast * 1e3:>10.2f} ms "
          f"{ratio:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=2_000_000,
                        help="samples for the Bessel benchmarks")
    parser.add_argument("--grid", type=int, default=1024,
                        help="points per side for the mode-grid benchmark")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions, best time wins")
    args = parser.parse_args()

    compiled = _load_compiled()
    if compiled is None:
        print("compiled extension not available; nothing to compare")
        return

    x = np.linspace(0.0, 400.0, args.points)
    coords = (np.arange(args.grid) - args.grid // 2) * 1e-6
    k_m = 2.0 * np.pi / 40e-6
    grid_args = (coords, coords, k_m, 100e-6, 110e-6, 1e-12)

    for name, fn in (("j0", "j0"), ("j1", "j1")):
        mismatch = np.max(np.abs(getattr(pure, fn)(x)
                                 - getattr(compiled, fn)(x)))
        assert mismatch == 0.0, f"{name} backends disagree by {mismatch}"

    # the two backends factor the Gaussian envelope differently (one exp
    # of a sum versus a product of two exps), so the grids agree to a
    # couple of ulp rather than bitwise; the Bessel paths are bitwise
    out_pure = np.empty((args.grid, args.grid))
    out_fast = np.empty((args.grid, args.grid))
    pure.mode_block(*grid_args, out_pure)
    compiled.mode_block(*grid_args, out_fast)
    assert np.allclose(out_pure, out_fast, rtol=1e-12, atol=0.0), \
        "mode grids disagree beyond rounding"

    n_label = f"{args.points // 1000}k samples"
    print(f"{'kernel':<24} {'pure':>13} {'compiled':>13} {'speedup':>9}")
    _row(f"j0, {n_label}",
         _best_of(args.repeat, pure.j0, x),
         _best_of(args.repeat, compiled.j0, x))
    _row(f"j1, {n_label}",
         _best_of(args.repeat, pure.j1, x),
         _best_of(args.repeat, compiled.j1, x))
    _row(f"mode grid {args.grid}^2",
         _best_of(args.repeat, pure.mode_block, *grid_args, out_pure),
         _best_of(args.repeat, compiled.mode_block, *grid_args, out_fast))

    t1 = _best_of(args.repeat, mode_grid, *grid_args, 1)
    t8 = _best_of(args.repeat, mode_grid, *grid_args, 8)
    print(f"\nmode grid via active backend: {t1 * 1e3:.2f} ms at 1 thread, "
          f"{t8 * 1e3:.2f} ms at 8 threads")


if __name__ == "__main__":
    main()
