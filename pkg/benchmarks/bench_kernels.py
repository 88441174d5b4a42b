"""Time the hot kernels under both backends.

Each backend runs in its own interpreter because the choice is made at import
time from ``CYCLEPACK_DISABLE_NUMBA``.  Results of both runs are compared so a
speedup never hides a divergence.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--graphs 40]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from cyclepack import _kernels as K
from cyclepack.graph import Graph
from cyclepack.harness import random_graph
from cyclepack.packing import exact_cycle_search, max_triangle_packing

repeat, count = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(2024)
graphs = [random_graph(rng, int(rng.integers(10, 16)), float(rng.uniform(0.2, 0.5)))
          for _ in range(count)]
masks = np.arange(1 << 18, dtype=np.int64)

def best(fn):
    fn()  # warm-up (compilation, caches)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out

timings, results = {}, {}
timings["degrees_from_masks"], d = best(lambda: K.degrees_from_masks(masks, 7))
results["degrees_from_masks"] = int(d.sum())
timings["rows_from_masks"], r = best(lambda: K.rows_from_masks(masks, 7))
results["rows_from_masks"] = int(r.sum())

def cycles():
    return [exact_cycle_search(g, max(2, g.n // 4), 10**6).status.value for g in graphs]
timings["search_cycles"], results["search_cycles"] = best(cycles)

def triangles():
    return [len(max_triangle_packing(g)) for g in graphs]
timings["search_triangles"], results["search_triangles"] = best(triangles)
print(json.dumps({"backend": K.BACKEND, "timings": timings, "results": results}))
"""


def run(backend: str, repeat: int, count: int) -> dict:
    env = dict(os.environ)
    env.pop("CYCLEPACK_DISABLE_NUMBA", None)
    if backend == "python":
        env["CYCLEPACK_DISABLE_NUMBA"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat), str(count)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", type=int, default=40)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    fast = run("numba", args.repeat, args.graphs)
    slow = run("python", args.repeat, args.graphs)
    if fast["backend"] != "numba":
        print("numba is not importable; only the fallback was timed", file=sys.stderr)
    print(f"{'kernel':<20} {'numba [s]':>10} {'python [s]':>11} {'speedup':>8}")
    for name, tf in fast["timings"].items():
        ts = slow["timings"][name]
        print(f"{name:<20} {tf:>10.4f} {ts:>11.4f} {ts / max(tf, 1e-9):>7.1f}x")
    same = fast["results"] == slow["results"]
    print(f"results identical: {same}   (total {time.perf_counter() - t0:.1f}s)")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
