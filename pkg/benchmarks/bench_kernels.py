"""Time the compiled and numpy L1 kernels on the table-sized workloads.

    python3 benchmarks/bench_kernels.py [--sizes 1024,2048,4096] [--repeat 5]
"""

import argparse
import importlib
import timeit

import numpy as np

from l1caputo import _kernels_py
from l1caputo.l1 import _coefficients, l1_scale


def load_backends():
    backends = {"python": _kernels_py}
    try:
        backends["cython"] = importlib.import_module("l1caputo._kernels")
    except ImportError:
        pass
    return backends


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1024,2048,4096")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--alpha", type=float, default=0.5)
    args = parser.parse_args()

    backends = load_backends()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<12}{'N':>6}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for N in (int(s) for s in args.sizes.split(",")):
        b = _coefficients(args.alpha, N)
        y = rng.standard_normal(N + 1)
        f = rng.standard_normal(N + 1)
        c = l1_scale(args.alpha, 1.0 / N)
        jobs = {
            "history": lambda k: k.l1_history(b, y),
            "fode_march": lambda k: k.fode_march(b, c, 1.0, f, 0.0),
        }
        for label, job in jobs.items():
            times = {name: min(timeit.repeat(lambda: job(k), number=1, repeat=args.repeat)) for name, k in backends.items()}
            cells = "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
            speed = f"{times['python'] / times['cython']:>9.1f}x" if "cython" in times else f"{'-':>10}"
            print(f"{label:<12}{N:>6}{cells}{speed}")


if __name__ == "__main__":
    main()
