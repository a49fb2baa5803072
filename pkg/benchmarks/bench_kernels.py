"""Time the numba kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Both paths run in this process: the fallback is selected by flipping
``avgconn._accel.USE_NUMBA``, so numba must be importable. Results of the two
paths are compared before any timing is reported.
"""
from __future__ import annotations

import argparse
import json
import statistics
import time
from itertools import combinations

from avgconn import _accel
from avgconn.connectivity import all_pairs_report
from avgconn.constructions import build_gamma, build_gkp
from avgconn.search import canonical_code, enumerate_connected_graphs
from avgconn.separators import enumerate_minimal_separators


def bench_flow():
    g = build_gamma(3, 10)  # a fresh graph, so the cached networks are rebuilt too
    return all_pairs_report(g, "vertex").total + all_pairs_report(g, "edge").total


def bench_separators():
    g = build_gkp(3, 7)
    pairs = [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)][:12]
    return sum(len(enumerate_minimal_separators(g, u, v)) for u, v in pairs)


def bench_canonical():
    graphs = list(enumerate_connected_graphs(6))
    return sum(canonical_code(g, "brute") % 1_000_003 for g in graphs)


CASES = {
    "max-flow (all pairs, Gamma_{3,10}, both modes)": bench_flow,
    "separator scan (12 pairs of G_{3,7})": bench_separators,
    "canonical form (112 graphs, n=6)": bench_canonical,
}


def _time(fn, repeat: int) -> tuple[float, object]:
    out = None
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the results here")
    args = ap.parse_args()
    if _accel.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    rows = []
    for name, fn in CASES.items():
        _accel.USE_NUMBA = True
        fn()  # compile / load the cache outside the timed region
        t_fast, r_fast = _time(fn, args.repeat)
        _accel.USE_NUMBA = False
        t_slow, r_slow = _time(fn, args.repeat)
        _accel.USE_NUMBA = True
        if r_fast != r_slow:
            raise SystemExit(f"{name}: paths disagree ({r_fast} vs {r_slow})")
        rows.append({"case": name, "numba_s": t_fast, "fallback_s": t_slow, "speedup": t_slow / t_fast})

    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  {'numba':>9}  {'fallback':>9}  speedup")
    for r in rows:
        print(f"{r['case']:<{width}}  {r['numba_s']:>8.3f}s  {r['fallback_s']:>8.3f}s  {r['speedup']:>6.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
