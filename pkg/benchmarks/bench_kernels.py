"""Time the compiled kernels against their vectorized numpy twins.

Runs both routes on identical inputs, checks they agree, and prints
best-of-N wall times. The compiled route needs numba; without it the
script reports the numpy timings only.

Usage: python3 benchmarks/bench_kernels.py --grid 400 --batch 2000 --ports 8
"""

import argparse
import time

import numpy as np

from rxfront import kernels


def best_of(fun, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fun()
        times.append(time.perf_counter() - t0)
    return min(times)


def snr_grid_inputs(n, rng):
    re_vals = np.linspace(0.0, 200.0, n)
    im_vals = np.linspace(-100.0, 100.0, n)
    zr_re = 50.0 + rng.uniform(0, 10)
    zr_im = rng.uniform(-20, 20)
    return re_vals, im_vals, zr_re, zr_im, 1e-10, 100.0, 1e-18, 8.0e-21


def batch_inputs(n_loads, k, rng):
    base = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    z_r = base + base.T
    z_r += (2.0 * k - np.linalg.eigvalsh(z_r.real).min()) * np.eye(k)
    v_oc = rng.normal(size=k) + 1j * rng.normal(size=k)
    loads = np.conj(z_r)[None, :, :] + 0.01 * (
        rng.normal(size=(n_loads, k, k)) + 1j * rng.normal(size=(n_loads, k, k))
    )
    return z_r.astype(np.complex128), loads.astype(np.complex128), v_oc.astype(np.complex128)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", type=int, default=400, help="SNR grid side length")
    parser.add_argument("--batch", type=int, default=2000, help="number of load matrices")
    parser.add_argument("--ports", type=int, default=8, help="array size for the batch kernel")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats, best one reported")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    grid_args = snr_grid_inputs(args.grid, rng)
    z_r, loads, v_oc = batch_inputs(args.batch, args.ports, rng)

    print(f"numba available: {kernels.HAVE_NUMBA} (active route: {kernels.ACTIVE})")

    ref_grid = kernels._snr_grid_numpy(*grid_args)
    t = best_of(lambda: kernels._snr_grid_numpy(*grid_args), args.repeats)
    print(f"snr_grid    numpy  {args.grid}x{args.grid}: {t * 1e3:8.3f} ms")
    if kernels.HAVE_NUMBA:
        kernels._snr_grid_jit(*grid_args)  # compile outside the timer
        t_jit = best_of(lambda: kernels._snr_grid_jit(*grid_args), args.repeats)
        drift = np.nanmax(np.abs(ref_grid - kernels._snr_grid_jit(*grid_args)))
        print(f"snr_grid    numba  {args.grid}x{args.grid}: {t_jit * 1e3:8.3f} ms"
              f"  (x{t / t_jit:.2f}, max |diff| {drift:.3g})")

    ref_batch = kernels._sum_power_batch_numpy(z_r, loads, v_oc)
    t = best_of(lambda: kernels._sum_power_batch_numpy(z_r, loads, v_oc), args.repeats)
    print(f"power_batch numpy  {args.batch}x{args.ports}p: {t * 1e3:8.3f} ms")
    if kernels.HAVE_NUMBA:
        kernels._sum_power_batch_jit(z_r, loads, v_oc)
        t_jit = best_of(lambda: kernels._sum_power_batch_jit(z_r, loads, v_oc), args.repeats)
        drift = np.max(np.abs(ref_batch - kernels._sum_power_batch_jit(z_r, loads, v_oc)))
        print(f"power_batch numba  {args.batch}x{args.ports}p: {t_jit * 1e3:8.3f} ms"
              f"  (x{t / t_jit:.2f}, max |diff| {drift:.3g})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
