"""Compare the numba and pure-numpy kernel backends.

Times the moment precomputation and a full decomposition on a synthetic
image, checks that both backends produce identical label maps, and prints
a small table. Run as:

    python3 benchmarks/benchmark_backends.py [--size 256] [--k 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

import scalp
from scalp import ScalpParams
from scalp.neighborhood import precompute_moments


def synthetic_image(size: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size]
    lab = np.zeros((size, size, 3))
    lab[..., 0] = 50 + 40 * np.sin(xx / 17.0) * np.cos(yy / 23.0)
    lab[..., 1] = 30 * np.sign(np.sin(xx / 31.0))
    lab[..., 2] = 30 * np.sign(np.cos(yy / 29.0))
    return lab + rng.normal(0, 2.0, lab.shape)


def time_call(fn, repeat: int) -> float:
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--k", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    img = synthetic_image(args.size)
    params = ScalpParams(K=args.k)
    results = {}
    labels = {}
    for backend in ("numba", "numpy"):
        try:
            scalp.set_backend(backend)
            # warm-up triggers JIT compilation for numba
            precompute_moments(img[:16, :16], params.n, params.sigma)
            scalp.run_scalp(img[:32, :32], ScalpParams(K=4, iterations=1))
            t_mom = time_call(
                lambda: precompute_moments(img, params.n, params.sigma),
                args.repeat)
            t_run = time_call(lambda: labels.setdefault(
                backend, scalp.run_scalp(img, params)), args.repeat)
            results[backend] = (t_mom, t_run)
        finally:
            scalp.set_backend(None)

    print(f"image {args.size}x{args.size}, K={args.k}, "
          f"n={params.n}, {params.iterations} iterations")
    print(f"{'backend':<8} {'moments [s]':>12} {'decompose [s]':>14}")
    for backend, (t_mom, t_run) in results.items():
        print(f"{backend:<8} {t_mom:>12.4f} {t_run:>14.4f}")
    same = np.array_equal(labels["numba"], labels["numpy"])
    print(f"label maps identical across backends: {same}")
    if not same:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
