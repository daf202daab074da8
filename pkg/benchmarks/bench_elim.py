"""Compare the compiled elimination kernel with the pure-Python one.

Run ``python3 benchmarks/bench_elim.py``. The synthetic part row-reduces
random sparse integer matrices with each kernel directly; the workload part
times an end-to-end cohomology computation in a fresh interpreter per
backend (``SUPERDECOMP_PURE=1`` selects the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from superdecomp import _elim_py

try:
    from superdecomp import _elim
except ImportError:
    _elim = None

WORKLOAD = (
    "from superdecomp.sl11cat import build_Vhbar_n;"
    "from superdecomp.cohom import end_cohomology;"
    "[end_cohomology(build_Vhbar_n(1, n), 1) for n in (2, 3, 4)]"
)


def random_rows(n, density, rng):
    rows = []
    for _ in range(n):
        row = {j: rng.randint(-9, 9) for j in range(n) if rng.random() < density}
        rows.append({j: v for j, v in row.items() if v})
    return rows


def bench_kernel(mod, rows, repeat):
    return min(timeit.repeat(lambda: mod.echelon(rows, True), number=1, repeat=repeat))


def bench_workload(pure, repeat):
    env = dict(os.environ)
    env.pop("SUPERDECOMP_PURE", None)
    if pure:
        env["SUPERDECOMP_PURE"] = "1"
    stmt = f"import timeit; print(min(timeit.repeat({WORKLOAD!r}, number=1, repeat={repeat})))"
    out = subprocess.run([sys.executable, "-c", stmt], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 120])
    ap.add_argument("--density", type=float, default=0.15)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _elim is None:
        print("compiled kernel not built; only the pure-Python numbers are shown")
    rng = random.Random(args.seed)
    print(f"{'size':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.sizes:
        rows = random_rows(n, args.density, rng)
        assert _elim is None or _elim.echelon(rows, True) == _elim_py.echelon(rows, True)
        tp = bench_kernel(_elim_py, rows, args.repeat)
        if _elim is None:
            print(f"{n:>6} {tp:>10.4f}")
            continue
        tc = bench_kernel(_elim, rows, args.repeat)
        print(f"{n:>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.2f}x")

    tp = bench_workload(True, args.repeat)
    if _elim is None:
        print(f"workload (End V^1(n) cohomology): python {tp:.3f}s")
        return
    tc = bench_workload(False, args.repeat)
    print(f"workload (End V^1(n) cohomology): python {tp:.3f}s, cython {tc:.3f}s, {tp / tc:.2f}x")


if __name__ == "__main__":
    main()
