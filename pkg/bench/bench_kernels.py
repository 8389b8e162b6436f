"""Timing comparison of the compiled and pure Python kernels.

Usage: python3 bench/bench_kernels.py [--bound N] [--repeat K]
"""

import argparse
import time

from bqf import _core_py

try:
    from bqf import _core
except ImportError:
    _core = None

FORMS = [(1, 1, 12), (2, -1, 6), (3, 1, 4), (1, 0, 41), (7, 3, 11)]


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=200000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("pure", _core_py)]
    if _core is not None:
        backends.append(("compiled", _core))
    else:
        print("compiled kernels not built; timing pure only")

    print(f"{'kernel':<34}" + "".join(f"{name:>12}" for name, _ in backends))
    for a, b, c in FORMS:
        label = f"value_bitmap({a},{b},{c}, {args.bound})"
        times = [
            _time(mod.value_bitmap, (a, b, c, args.bound), args.repeat)
            for _, mod in backends
        ]
        row = "".join(f"{t * 1000:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"   x{times[0] / times[1]:.1f}"
        print(f"{label:<34}" + row)

    target = 10**9 + 7
    for a, b, c in FORMS:
        label = f"find_witness({a},{b},{c}, {target})"
        times = [
            _time(mod.find_witness, (a, b, c, target), args.repeat)
            for _, mod in backends
        ]
        row = "".join(f"{t * 1000:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"   x{times[0] / times[1]:.1f}"
        print(f"{label:<34}" + row)


if __name__ == "__main__":
    main()
