"""Benchmark the compiled kernels against the plain NumPy/Python path.

Run:  python3 benchmarks/bench_kernels.py [--repeat N]

Times the hot enumeration kernels on mid-sized instances: the partition
scan behind the connectivity measure, the subset sweep behind sparseness
checks, the orientation search, and the edge-assignment packing oracle.
The same workloads run through the numba-compiled functions and through
the ``py_*`` fallbacks; results include the agreement check.
"""

import argparse
import random
import time

import numpy as np

from partition_forge import _kernels as K


def _instance(seed, n, m, min_bits=2, max_bits=2):
    rng = random.Random(seed)
    masks = []
    for _ in range(m):
        bits = rng.sample(range(n), rng.randint(min_bits, max_bits))
        masks.append(sum(1 << b for b in bits))
    tab = np.asarray([0] + [1] * ((1 << n) - 1), dtype=np.int64)
    return np.asarray(masks, dtype=np.int64), tab


def _time(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def bench_partition_scan(repeat):
    n, m = 11, 18
    masks, tab = _instance(1, n, m)
    args = (n, masks, tab, K.HUGE, False)
    fast, a = _time(K.partition_scan, *args, repeat=repeat)
    slow, b = _time(K.py_partition_scan, *args, repeat=repeat)
    assert int(a[0]) == int(b[0])
    return "partition scan (n=11, Bell=678570)", fast, slow


def bench_sparse_sweep(repeat):
    n, m = 14, 30
    masks, tab = _instance(2, n, m)
    slack = np.asarray(
        [bin(a).count("1") for a in range(1 << n)], dtype=np.int64
    )
    fast, a = _time(K.sparse_violation, n, masks, slack, repeat=repeat)
    slow, b = _time(K.py_sparse_violation, n, masks, slack, repeat=repeat)
    assert int(a) == int(b)
    return "sparse sweep (n=14, 16384 subsets)", fast, slow


def bench_orientation(repeat):
    rng = random.Random(3)
    n, m = 6, 14
    tails = np.asarray([rng.randrange(n) for _ in range(m)], dtype=np.int64)
    heads = np.asarray(
        [(t + rng.randint(1, n - 1)) % n for t in tails], dtype=np.int64
    )
    tab = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        tab[1 << v] = 2
    fast, a = _time(K.find_orientation, n, tails, heads, tab, repeat=repeat)
    slow, b = _time(K.py_find_orientation, n, tails, heads, tab, repeat=repeat)
    assert int(a) == int(b)
    return "orientation search (2^14 orientations)", fast, slow


def bench_assignment(repeat):
    n, m = 6, 12
    masks, _ = _instance(4, n, m)
    slack = np.asarray(
        [max(0, bin(a).count("1") - 1) for a in range(1 << n)], dtype=np.int64
    )
    slacks = np.stack([slack, slack])
    fast, a = _time(K.assignment_best, n, masks, slacks, np.int64(-1),
                    repeat=repeat)
    slow, b = _time(K.py_assignment_best, n, masks, slacks, np.int64(-1),
                    repeat=repeat)
    assert int(a[0]) == int(b[0])
    return "assignment oracle (3^12 states)", fast, slow


def bench_pair_validation(repeat):
    n = 10
    _, tab = _instance(5, n, 0)
    fast, a = _time(K.pair_violation, tab, n, 1, repeat=repeat)
    slow, b = _time(K.py_pair_violation, tab, n, 1, repeat=repeat)
    assert list(a) == list(b)
    return "property validation (4^10 pairs)", fast, slow


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"compiled path active: {K.USING_NUMBA}")
    if not K.USING_NUMBA:
        print("(PARTITION_FORGE_NO_NUMBA is set or numba is missing; both "
              "columns run the fallback)")
    benches = [
        bench_partition_scan,
        bench_sparse_sweep,
        bench_orientation,
        bench_assignment,
        bench_pair_validation,
    ]
    print(f"{'kernel':45s} {'compiled':>10s} {'fallback':>10s} {'speedup':>8s}")
    for bench in benches:
        name, fast, slow = bench(args.repeat)
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{name:45s} {fast * 1e3:9.2f}ms {slow * 1e3:9.2f}ms {ratio:7.1f}x")


if __name__ == "__main__":
    main()
