#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy reference.

Times each kernel on representative shapes plus one end-to-end disc-rounding
block, and prints per-kernel timings with the cython/python speedup.

    python benchmarks/bench_kernels.py [--trials 65536] [--repeat 5]
"""

import argparse
import time

import numpy as np

from maxkcut._kernels import reference

try:
    from maxkcut._kernels import _core
except ImportError:
    _core = None

TWO_PI = 2.0 * np.pi


def make_inputs(T, n, m, d, seed=0):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 4, size=(T, n)).astype(np.int32)
    theta = rng.uniform(-np.pi, np.pi, size=(T, n))
    psi = rng.uniform(0, TWO_PI, size=T)
    iu, ju = np.triu_indices(n, 1)
    pick = rng.choice(len(iu), size=m, replace=False)
    u = iu[pick].astype(np.int64)
    v = ju[pick].astype(np.int64)
    w = rng.uniform(0.5, 2.0, size=m)
    V = rng.standard_normal((n, d))
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    lam = rng.uniform(0, 1, size=m)
    g4 = rng.standard_normal((T, 4))
    return labels, theta, psi, u, v, w, V, lam, g4


def bench(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=65536)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--n", type=int, default=64)
    parser.add_argument("--m", type=int, default=256)
    parser.add_argument("--d", type=int, default=8)
    args = parser.parse_args()

    if _core is None:
        print("compiled kernels not built; nothing to compare")
        return

    T, n, m, d = args.trials, args.n, args.m, args.d
    labels, theta, psi, u, v, w, V, lam, g4 = make_inputs(T, n, m, d)
    grad = np.empty_like(V)
    r = -0.5
    s = np.sqrt(1 - r * r)

    cases = {
        "sector_labels": lambda impl: impl.sector_labels(theta, psi, 5),
        "cut_values": lambda impl: impl.cut_values(labels, u, v, w),
        "diff_counts": lambda impl: impl.diff_counts(labels, u, v),
        "gamma_angles": lambda impl: impl.gamma_angles(g4, r, s),
        "edge_dots": lambda impl: impl.edge_dots(V, u, v),
        "sdp_sweep": lambda impl: impl.sdp_sweep(
            V, u, v, w, 0.75, -1 / 3, lam, 10.0, grad
        ),
    }

    print(f"shapes: trials={T}, n={n}, m={m}, d={d}  (best of {args.repeat})")
    print(f"{'kernel':<16} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in cases.items():
        t_py = bench(lambda: fn(reference), args.repeat)
        t_cy = bench(lambda: fn(_core), args.repeat)
        print(f"{name:<16} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>7.1f}x")

    # end-to-end disc rounding block: angles -> labels -> per-edge counts
    def pipeline(impl):
        lab = impl.sector_labels(theta, psi, 5)
        return impl.diff_counts(lab, u, v)

    t_py = bench(lambda: pipeline(reference), args.repeat)
    t_cy = bench(lambda: pipeline(_core), args.repeat)
    print(f"{'disc block':<16} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
