"""Benchmark the compiled solver kernels against the pure-Python fallback.

Runs the exhaustive scan and the branch-and-bound search over seeded random
elective-selection instances and reports wall-clock times plus speedups.

    python benchmarks/bench_solvers.py [--instances N] [--max-n N]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from currialign.optimize import _purekernels  # noqa: E402

try:
    from currialign.optimize import _speedups

    HAVE_COMPILED = True
except ImportError:
    _speedups = None
    HAVE_COMPILED = False


def make_instances(count: int, max_n: int, seed: int = 1603):
    rng = np.random.default_rng(seed)
    instances = []
    for _ in range(count):
        n = int(rng.integers(6, max_n + 1))
        k = int(rng.integers(2, n))
        E = rng.random((n, 9)) + 1e-9
        E /= E.sum(axis=1, keepdims=True)
        credits = rng.uniform(1.0, 9.0, n)
        base_dist = rng.random(9) + 1e-9
        base_credits = float(rng.uniform(5.0, 60.0))
        base = base_credits * base_dist / base_dist.sum()
        target = rng.random(9) + 1e-9
        target /= target.sum()
        instances.append((credits[:, None] * E, credits, base, base_credits, target, k))
    return instances


def run(kernel, fn_name: str, instances) -> tuple[float, list]:
    fn = getattr(kernel, fn_name)
    results = []
    start = time.perf_counter()
    for cE, credits, base, base_credits, target, k in instances:
        results.append(fn(cE, credits, base, base_credits, target, k))
    return time.perf_counter() - start, results


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=int, default=120)
    parser.add_argument("--max-n", type=int, default=16)
    args = parser.parse_args()

    instances = make_instances(args.instances, args.max_n)
    print(f"{args.instances} instances, n <= {args.max_n}")

    for fn_name in ("exhaustive_min", "bnb_min"):
        pure_time, pure_results = run(_purekernels, fn_name, instances)
        line = f"{fn_name:>16}: pure {pure_time * 1000:8.1f} ms"
        if HAVE_COMPILED:
            fast_time, fast_results = run(_speedups, fn_name, instances)
            for p, f in zip(pure_results, fast_results):
                assert tuple(p[0]) == tuple(f[0]), "kernel results diverge"
                assert abs(p[1] - f[1]) < 1e-12
            line += f" | compiled {fast_time * 1000:8.1f} ms | speedup {pure_time / fast_time:6.1f}x"
        else:
            line += " | compiled kernels unavailable"
        print(line)


if __name__ == "__main__":
    main()
