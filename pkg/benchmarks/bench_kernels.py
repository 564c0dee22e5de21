"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each kernel runs on identical seeded inputs under both implementations;
outputs are checked for agreement before anything is timed.  The last
section times a whole workload (soundness over random level-4 points) in a
subprocess per backend, since the backend is fixed at import.
"""

import argparse
import itertools
import os
import subprocess
import sys
import timeit

import numpy as np

from satogr import _kernels_py

try:
    from satogr import _kernels
except ImportError:
    _kernels = None

P = 2_147_483_647

WORKLOAD = """
import random, time
from satogr import _backend
from satogr.field import GF, QQ
from satogr.plucker import satisfies_all
from satogr.points import plucker_vector, random_point
rng = random.Random({seed})
pts = [random_point(f, 4, rng) for f in (QQ, GF(7)) for _ in range(300)]
t = time.perf_counter()
assert all(satisfies_all(plucker_vector(p)) for p in pts)
print(_backend.BACKEND, time.perf_counter() - t)
"""


def cases(rng):
    sq = rng.integers(0, P, size=(40, 40), dtype=np.int64)
    wide = rng.integers(0, P, size=(30, 80), dtype=np.int64)
    small = rng.integers(0, 101, size=(4, 8), dtype=np.int64)
    cols = np.array(list(itertools.combinations(range(8), 4)), dtype=np.int64)
    nrel, per = 1316, 3
    coef = rng.choice(np.array([-1, 1], dtype=np.int64), size=nrel * per)
    left = rng.integers(0, 70, size=nrel * per, dtype=np.int64)
    right = rng.integers(0, 70, size=nrel * per, dtype=np.int64)
    offsets = np.arange(0, nrel * per + 1, per, dtype=np.int64)
    values = rng.integers(-1000, 1000, size=70, dtype=np.int64)
    return [
        ("rank_modp 40x40", "rank_modp", (sq, P)),
        ("det_modp 40x40", "det_modp", (sq, P)),
        ("rref_modp 30x80", "rref_modp", (wide, P)),
        ("minors_modp 4x8, 70 minors", "minors_modp", (small, cols, 101)),
        ("eval_quadrics 1316 x 3, int64", "eval_quadrics", (coef, left, right, offsets, values, 0)),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-workload", action="store_true")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, name, kargs in cases(rng):
        py, cy = getattr(_kernels_py, name), getattr(_kernels, name)
        if not same(py(*kargs), cy(*kargs)):
            print(f"{label}: outputs differ")
            return 1
        t_py = best(py, kargs, args.repeat)
        t_cy = best(cy, kargs, args.repeat)
        print(f"{label:32s} {t_py:10.5f} {t_cy:10.5f} {t_py / t_cy:7.1f}x")
    if not args.no_workload:
        print("\nworkload: satisfies_all on 600 random level-4 points")
        code = WORKLOAD.format(seed=args.seed)
        for pure in ("1", "0"):
            env = dict(os.environ, SATOGR_PURE_PYTHON=pure)
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            print(f"  {backend:8s} {float(secs):8.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
