"""Compare the compiled and numpy row-reduction kernels.

    python benchmarks/bench_rref.py [--repeat N]

Runs random dense/sparse matrices and two real workloads (a quotient sweep
and the P^1 kernel search in three variables) under each backend.
"""

import argparse
import time

import numpy as np

from steenhit import _backend, hit
from steenhit.claims import thm24_search


def _timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def random_case(shape, p, density, seed=0):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=shape).astype(np.int64)
    m[rng.random(shape) > density] = 0
    return m


def run(repeat):
    impls = _backend.IMPLEMENTATIONS
    if "cython" not in impls:
        print("compiled kernel not built; only the numpy fallback is available")
    cases = []
    for shape, density in [((200, 200), 1.0), ((600, 500), 0.05), ((1000, 600), 0.02)]:
        m = random_case(shape, 3, density)

        def go(fn, m=m):
            fn(np.ascontiguousarray(m.copy()), 3)

        cases.append((f"random {shape[0]}x{shape[1]} density {density}", go))

    def quotient_sweep(fn):
        _backend.rref_inplace = fn
        hit.clear_cache()
        for n in range(0, 401, 2):
            hit.quotient(5, 2, n)

    def kernel_search(fn):
        _backend.rref_inplace = fn
        thm24_search(3, 3, 60)

    cases.append(("quotient sweep p=5 h=2 n<=400", quotient_sweep))
    cases.append(("P^1 kernel search p=3 h=3 n<=60", kernel_search))

    original = _backend.rref_inplace
    names = sorted(impls)
    print(f"{'case':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    try:
        for label, go in cases:
            times = {n: _timeit(lambda n=n: go(impls[n]), repeat) for n in names}
            row = f"{label:40s}" + "".join(f"{times[n]:11.4f}s" for n in names)
            if len(names) > 1:
                row += f"{times['python'] / times['cython']:11.1f}x"
            print(row)
    finally:
        _backend.rref_inplace = original
        hit.clear_cache()


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    run(parser.parse_args().repeat)
