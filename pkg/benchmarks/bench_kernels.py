"""Compare the two segment-prefilter backends on synthetic and real inputs.

Runs candidate_pairs with backend="numba" and backend="numpy" on random
segment soups of growing size plus the segment sets of actual random
immersions, checks that both backends report the same candidate pairs, and
prints a timing table.  Usage:

    python3 benchmarks/bench_kernels.py
"""

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from immersa.graphs import heawood_graph, petersen_graph
from immersa.immersion import random_immersion
from immersa.kernels import HAS_NUMBA, candidate_pairs, rounding_bounds


def segment_soup(n, seed):
    rng = np.random.default_rng(seed)
    anchors = rng.uniform(0.0, 16.0, size=(n, 2))
    offsets = rng.uniform(-1.5, 1.5, size=(n, 2))
    return np.hstack([anchors, anchors + offsets])


def immersion_segments(graph, seed):
    imm = random_immersion(graph, seed=seed)
    rows = []
    for pts in imm.edge_polyline.values():
        for i in range(len(pts) - 1):
            rows.append([float(pts[i][0]), float(pts[i][1]),
                         float(pts[i + 1][0]), float(pts[i + 1][1])])
    return np.array(rows, dtype=np.float64)


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    if not HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1
    workloads = [
        ("soup n=100", segment_soup(100, 1)),
        ("soup n=300", segment_soup(300, 2)),
        ("soup n=1000", segment_soup(1000, 3)),
        ("soup n=3000", segment_soup(3000, 4)),
        ("PG immersion", immersion_segments(petersen_graph(), 0)),
        ("HG immersion", immersion_segments(heawood_graph(), 0)),
    ]
    # First call compiles the numba kernel; keep it out of the timings.
    warm = workloads[0][1]
    margin, eps = rounding_bounds(np.abs(warm).max())
    candidate_pairs(warm, margin, eps, backend="numba")

    print(f"{'workload':<14} {'segments':>8} {'pairs':>7} "
          f"{'numba ms':>9} {'numpy ms':>9} {'speedup':>8}")
    for label, segs in workloads:
        margin, eps = rounding_bounds(np.abs(segs).max())
        out_nb = candidate_pairs(segs, margin, eps, backend="numba")
        out_np = candidate_pairs(segs, margin, eps, backend="numpy")
        if not np.array_equal(out_nb, out_np):
            print(f"{label}: BACKEND MISMATCH")
            return 1
        repeats = max(3, int(2e6 / (segs.shape[0] ** 2 + 1)))
        t_nb = best_of(
            lambda: candidate_pairs(segs, margin, eps, backend="numba"),
            repeats)
        t_np = best_of(
            lambda: candidate_pairs(segs, margin, eps, backend="numpy"),
            repeats)
        print(f"{label:<14} {segs.shape[0]:>8} {out_nb.shape[0]:>7} "
              f"{t_nb * 1e3:>9.3f} {t_np * 1e3:>9.3f} {t_np / t_nb:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
