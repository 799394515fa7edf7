"""Benchmark the compiled elimination kernels against the pure Python twins.

Workloads mirror the two hot call sites: banded connecting-map matrices
(cohomology tables, genericity checks) and section-constraint kernels
(splitting types from transition matrices).

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import time

from bundlehunt import _elim_py

try:
    from bundlehunt import _elim_c
except ImportError:
    _elim_c = None


def banded_rows(rng, nblocks, block, mag):
    """Lower block-bidiagonal integer matrix, the connecting-map shape."""
    ncols = nblocks * block
    rows = []
    for i in range(nblocks + 1):
        for _ in range(block):
            cols = []
            vals = []
            for j in (i - 1, i):
                if 0 <= j < nblocks:
                    for k in range(block):
                        cols.append(j * block + k)
                        vals.append(rng.randint(-mag, mag))
            if cols:
                rows.append((cols, vals))
    return rows, ncols


def constraint_rows(rng, size, deg, mag):
    """Sparse section-constraint matrix shape: few terms per column block."""
    ncols = size * (deg + 1)
    rows = []
    for i in range(size):
        for e in range(1, deg + size):
            cols = []
            vals = []
            for j in range(size):
                k = e - rng.randint(-2, 2)
                if 0 <= k <= deg:
                    cols.append(k * size + j)
                    vals.append(rng.randint(-mag, mag))
            pairs = sorted((c, v) for c, v in zip(cols, vals) if v)
            if pairs:
                rows.append(([c for c, _ in pairs], [v for _, v in pairs]))
    return rows, ncols


def run(backend, workload, repeat):
    best = float("inf")
    for _ in range(repeat):
        total = 0.0
        for rows, ncols in workload:
            copied = [(list(c), list(v)) for c, v in rows]
            t0 = time.perf_counter()
            backend.rank_rows(copied, ncols)
            total += time.perf_counter() - t0
        best = min(best, total)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(0)
    workloads = {
        "connecting maps (12 banded 364x336)": [
            banded_rows(rng, 12, 28, 10) for _ in range(12)
        ],
        "section constraints (20 sparse ~200 cols)": [
            constraint_rows(rng, 10, 19, 8) for _ in range(20)
        ],
        "small dense-ish (60 of 40x40)": [
            (
                [
                    (
                        sorted(rng.sample(range(40), 12)),
                        [rng.randint(-9, 9) or 1 for _ in range(12)],
                    )
                    for _ in range(40)
                ],
                40,
            )
            for _ in range(60)
        ],
    }

    backends = [_elim_py] if _elim_c is None else [_elim_py, _elim_c]
    print(f"{'workload':45s}" + "".join(f"{b.BACKEND:>12s}" for b in backends) + "   speedup")
    for name, workload in workloads.items():
        times = [run(b, workload, args.repeat) for b in backends]
        ratio = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else 1.0
        cells = "".join(f"{t * 1000:10.1f}ms" for t in times)
        print(f"{name:45s}{cells}   {ratio:5.2f}x")


if __name__ == "__main__":
    main()
