"""Compiled vs pure-Python kernels on the two hot loops.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from twoselmer import kernels
from twoselmer.curves import height_box
from twoselmer.quartics import search_bounds

QUARTIC_CASES = [(-1, 0), (2, 3), (-13, 4), (6, 16)]
SIEVE_CASES = [10**6, 10**8, 10**10]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.compiled_available():
        raise SystemExit("compiled kernels not built; run pip install -e . --no-build-isolation")

    print(f"{'kernel':<28}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for A, B in QUARTIC_CASES:
        b = search_bounds(-48 * A, -1728 * B)
        argv = (b.I, b.J, b.amax, b.hmax, b.bmax0)
        tp, rp = best_of(lambda: kernels.quartic_box_search(*argv, backend="python"), args.repeat)
        tc, rc = best_of(lambda: kernels.quartic_box_search(*argv, backend="compiled"), args.repeat)
        assert sorted(rp) == sorted(rc)
        print(f"{f'box ({A},{B}) n={b.candidates}':<28}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")
    for X in SIEVE_CASES:
        amax, bmax = height_box(X)
        tp, rp = best_of(lambda: kernels.count_minimal_box(amax, bmax, backend="python"), args.repeat)
        tc, rc = best_of(lambda: kernels.count_minimal_box(amax, bmax, backend="compiled"), args.repeat)
        assert rp == rc
        print(f"{f'minimal sieve X=1e{len(str(X)) - 1}':<28}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
