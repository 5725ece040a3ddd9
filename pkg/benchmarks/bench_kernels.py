"""Compare the compiled and pure-Python kernels on the hot paths.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload is timed under both backends (best of ``--repeat``) and the
results are checked for equality before the timings are printed.
"""
import argparse
import time

import numpy as np

from simplexgraph import kernels
from simplexgraph.isomorphism import count_automorphisms, is_isomorphic
from simplexgraph.metrics import ggd_exact
from simplexgraph.registration import solve_assignment
from simplexgraph.sweep import exhaustive_pairs, random_graph, random_pairs, run_sweep
from simplexgraph.graph_model import Graph


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def workloads():
    rng = np.random.default_rng(0)
    clouds = [(rng.standard_normal((8, 40)), rng.standard_normal((8, 40))) for _ in range(50)]
    iso_pairs = list(random_pairs(8, 300, rng))
    iu = np.triu_indices(8, 1)
    ggd_pairs = []
    for _ in range(10):
        g = random_graph(8, rng, 0.5)
        pick = rng.choice(len(iu[0]), size=g.m, replace=False)
        ggd_pairs.append((g, Graph(8, tuple(zip(iu[0][pick].tolist(), iu[1][pick].tolist())))))
    pet = petersen()
    return {
        "lap 40x40 x50": lambda: [solve_assignment(x, y).perm.tolist() for x, y in clouds],
        "is_isomorphic n=8 x300": lambda: [is_isomorphic(g, h).decision for g, h in iso_pairs],
        "automorphisms petersen": lambda: count_automorphisms(pet),
        "ggd_exact n=8 x10": lambda: [round(ggd_exact(g, h).distance, 12) for g, h in ggd_pairs],
        "sweep n=4 exhaustive": lambda: len(run_sweep(exhaustive_pairs(4)).mismatches),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the python backend is available")
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in workloads().items():
        times, results = {}, {}
        for b in backends:
            with kernels.using_backend(b):
                best = float("inf")
                for _ in range(args.repeat):
                    t = time.perf_counter()
                    results[b] = fn()
                    best = min(best, time.perf_counter() - t)
                times[b] = best
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"{name}: backends disagree")
        row = f"{name:28s}" + "".join(f"{times[b]:11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"  {times['python'] / times['compiled']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
