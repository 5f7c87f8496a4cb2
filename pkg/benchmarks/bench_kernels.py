"""Throughput benchmark: compiled sandwich kernel vs the numpy reference.

Usage: python benchmarks/bench_kernels.py [--iters N] [--seed S]
"""

import argparse
import time

import numpy as np

from bmforge import kernels
from bmforge._refkernels import sandwich_objective as numpy_objective
from bmforge.distance import _Problem
from bmforge.random_bodies import random_convex_polygon


def make_cases(rng, count):
    cases = []
    for _ in range(count):
        k = random_convex_polygon(rng, int(rng.integers(4, 9)))
        l = random_convex_polygon(rng, int(rng.integers(4, 9)))
        prob = _Problem(k, l, 1)
        params = np.array([1.0, 0.05, -0.05, 1.0,
                           prob.gk[0], prob.gk[1], prob.gk[0], prob.gk[1]])
        cases.append((prob, params + rng.normal(0.0, 0.05, 8)))
    return cases


def run(fn, cases, iters):
    t0 = time.perf_counter()
    acc = 0.0
    for _ in range(iters):
        for prob, params in cases:
            r, s = fn(params, prob.kv, prob.kn, prob.kh, prob.lc, prob.sign)
            acc += min(r, 1e6)
    secs = time.perf_counter() - t0
    return iters * len(cases) / secs, acc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--iters", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cases = make_cases(rng, 32)

    rate_ref, acc_ref = run(numpy_objective, cases, args.iters)
    rate_active, acc_active = run(kernels.sandwich_objective, cases,
                                  args.iters)
    assert abs(acc_ref - acc_active) <= 1e-6 * max(1.0, abs(acc_ref))

    print(f"active backend: {kernels.BACKEND}")
    print(f"numpy reference: {rate_ref:12.0f} evals/s")
    print(f"active backend:  {rate_active:12.0f} evals/s")
    print(f"speedup: {rate_active / rate_ref:.2f}x")


if __name__ == "__main__":
    main()
