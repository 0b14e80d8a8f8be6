"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the environment switch does not
matter here.  Prints one row per kernel with the best-of-N wall time and
the speedup.
"""
import argparse
import random
import timeit

import numpy as np

from ddfkit import _kernels_py as py

try:
    from ddfkit import _kernels as cy
except ImportError:
    cy = None


def cases(rng):
    v = 728  # 3^6 - 1
    labels = np.array([rng.randrange(27) for _ in range(v)], dtype=np.int64)
    x = np.array([rng.randrange(9) for _ in range(v)], dtype=np.int64)
    y = np.array([rng.randrange(9) for _ in range(v)], dtype=np.int64)
    words = np.array([[rng.randrange(4) for _ in range(40)] for _ in range(200)], dtype=np.int64)
    small = labels[:80]
    target = py.relabel_first_occurrence(small[::-1].copy())
    mults = np.array([a for a in range(1, 80) if np.gcd(a, 80) == 1], dtype=np.int64)
    offs = np.arange(80, dtype=np.int64)
    return {
        "pair_difference_counts": lambda m: m.pair_difference_counts(labels, 27),
        "correlation_table": lambda m: m.correlation_table(x, y),
        "relabel_first_occurrence": lambda m: m.relabel_first_occurrence(labels),
        "affine_search": lambda m: m.affine_search(small, target, mults, offs),
        "min_pairwise_distance": lambda m: m.min_pairwise_distance(words),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(0)
    print(f"{'kernel':28s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        a, b = fn(py), fn(cy)
        if isinstance(a, np.ndarray):
            assert np.array_equal(a, b), name
        else:
            assert tuple(a) == tuple(b) if isinstance(a, tuple) else a == b, name
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:28s} {t_py:11.4f} {t_cy:11.4f} {t_py / max(t_cy, 1e-9):7.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
