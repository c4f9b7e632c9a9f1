"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--length N] [--repeat R]

Times suffix array, LCP and Lyndon array construction on prefixes of the
fixed point, then the full maximal-runs search built on top of them.
"""

import argparse
import time

import numpy as np

from parryindex import kernels
from parryindex.repetition import maximal_runs
from parryindex.words import ParryParams, fixed_point_prefix


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_backend(backend, text, word, repeat):
    sa, rank = backend.suffix_array(text)
    return {
        "suffix_array": best_of(lambda: backend.suffix_array(text), repeat),
        "lcp_array": best_of(lambda: backend.lcp_array(text, sa, rank), repeat),
        "lyndon_array": best_of(lambda: backend.lyndon_array(rank), repeat),
        "maximal_runs": best_of(lambda: maximal_runs(word, backend), repeat),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--length", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if kernels.compiled_backend is None:
        raise SystemExit("compiled extension not built; run `pip install -e .` first")

    print(f"prefix length {args.length}, best of {args.repeat}")
    print(f"{'params':>8} {'kernel':>14} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for pq in [(2, 1), (5, 3), (8, 1)]:
        word = fixed_point_prefix(ParryParams(*pq), args.length, truncate=True)
        text = word.to_array()
        fast = bench_backend(kernels.compiled_backend, text, word, args.repeat)
        slow = bench_backend(kernels.python_backend, text, word, args.repeat)
        for name in fast:
            print(f"{str(pq):>8} {name:>14} {fast[name]:>9.3f}s {slow[name]:>9.3f}s "
                  f"{slow[name] / fast[name]:>7.1f}x")
        # both backends must agree
        assert np.array_equal(kernels.compiled_backend.suffix_array(text)[0],
                              kernels.python_backend.suffix_array(text)[0])


if __name__ == "__main__":
    main()
