"""Time the compiled and numpy marching loops on the same problem.

Usage: python3 benchmarks/bench_backends.py [--steps 1024 2048 4096] [--repeat 3]
"""

import argparse
import time

import numpy as np

from fracbarenblatt import _backend
from fracbarenblatt.kernel import FractionalParams
from fracbarenblatt.profile import solve_profile


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, nargs="+", default=[512, 1024, 2048])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--m", type=float, default=2.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    p = FractionalParams(args.alpha, args.m)
    names = sorted(_backend.BACKENDS)
    print(f"alpha={p.alpha} m={p.m} backends={names} active={_backend.BACKEND}")
    print(f"{'N':>6} " + " ".join(f"{n + ' [s]':>12}" for n in names) + f" {'speedup':>8} {'max rel diff':>13}")
    for n in args.steps:
        res = {name: best_of(lambda: solve_profile(p, 1.0, n, backend=name).values, args.repeat)
               for name in names}
        line = f"{n:>6} " + " ".join(f"{res[name][0]:>12.4f}" for name in names)
        if len(names) == 2:
            a, b = res["cython"][1], res["python"][1]
            diff = np.max(np.abs(a - b)[1:] / np.abs(b[1:]))
            line += f" {res['python'][0] / res['cython'][0]:>8.1f} {diff:>13.2e}"
        print(line)


if __name__ == "__main__":
    main()
