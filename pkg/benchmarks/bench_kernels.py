"""Time one stencil step per backend and worker count.

    python benchmarks/bench_kernels.py --sizes 41 201 401 --workers 1 2 4
"""

import argparse
import timeit

import numpy as np

from agentheat.kernels import BACKENDS


def make_args(n, seed=0):
    rng = np.random.default_rng(seed)
    T = rng.uniform(0.0, 100.0, (n, n))
    lam = rng.uniform(0.01, 2.0, (n, n))
    return (T, np.empty_like(T), lam, lam, lam, lam, np.full_like(T, 1.5e6),
            np.zeros_like(T), np.zeros_like(T), 0.001, 0.005, False, 0.0, 0.0)


def bench(fn, args, workers, repeat):
    number = max(1, 200_000 // args[0].size)
    best = min(timeit.repeat(lambda: fn(*args, workers), number=number, repeat=repeat))
    return best / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[41, 201, 401])
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args(argv)

    print(f"{'backend':>8} {'n':>5} {'workers':>7} {'us/step':>10} {'ns/cell':>8}")
    for n in opts.sizes:
        args = make_args(n)
        outputs = {}
        for name, fn in BACKENDS.items():
            for w in opts.workers:
                sec = bench(fn, args, w, opts.repeat)
                outputs[name, w] = args[1].copy()
                print(f"{name:>8} {n:>5} {w:>7} {sec * 1e6:>10.1f} {sec * 1e9 / (n * n):>8.2f}")
        ref = next(iter(outputs.values()))
        same = all(np.array_equal(ref, o) for o in outputs.values())
        print(f"{'':>8} {n:>5} outputs bit-identical across runs: {same}")


if __name__ == "__main__":
    main()
