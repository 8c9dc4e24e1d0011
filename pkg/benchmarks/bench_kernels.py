"""Compare the compiled and pure-Python search kernels.

Usage: python benchmarks/bench_kernels.py [--repeat 3]

Kernel inputs (graphs, ball masks, targets) are built once per workload, so
the timings cover the search kernels only. The last row is an end-to-end
trap_search sweep over the zoo with fresh systems, which also pays for graph
construction in Python. Results from both backends must agree.
"""

import argparse
import time

from pseudotrap import kernel
from pseudotrap.orbits import all_omega_sets
from pseudotrap.pseudo_orbit import delta_grid, eps_grid, metric_graph
from pseudotrap.verifier import trap_search
from pseudotrap.zoo import cyclic_rotation, disjoint_attractors, random_map, zoo_systems


def cycles(s):
    return [c.cycle.bits for c in all_omega_sets(s)]


def layered(s, eps, deltas, n, target):
    tg = cycles(s) if target == "trap" else [(1 << s.num_points) - 1]
    jobs = [(metric_graph(s, d), s.ball_masks(eps), tg) for d in deltas]
    return lambda b: [kernel.layered_search(g, c, t, n, 10**8, b)[:2] for g, c, t in jobs]


def lasso(s, eps_values):
    jobs = [
        (metric_graph(s, d), s.ball_masks(e), cycles(s))
        for e in eps_values
        for d in delta_grid(s)
    ]
    return lambda b: [kernel.lasso_search(g, c, t, 10**8, b)[:4] for g, c, t in jobs]


def zoo_end_to_end(backend):
    return [
        [(r.delta, r.status, r.n) for r in trap_search(s, eps, backend=backend).results]
        for _, s in zoo_systems(64)
        for eps in eps_grid(s)
    ]


def workloads():
    z40 = cyclic_rotation(40)
    att = disjoint_attractors([16, 8, 8], 16)
    rnd = random_map(60, "line", 1)
    return [
        ("layered: rotation q=40 cover, n=15", layered(z40, 3, [1, 2, 3], 15, "cover")),
        ("layered: attractors [16,8,8], n=10", layered(att, 2, [1, 2], 10, "trap")),
        ("layered: random N=60, n=20", layered(rnd, 2, [1, 2], 20, "trap")),
        ("lasso: rotation q=40, eps 2..6", lasso(z40, [2, 3, 4, 5, 6])),
        ("lasso: attractors [16,8,8], all eps", lasso(att, eps_grid(att))),
        ("lasso: random N=60, eps 2..4", lasso(rnd, [2, 3, 4])),
        ("end to end: zoo trap_search sweep", zoo_end_to_end),
    ]


def best_time(fn, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernel.COMPILED_AVAILABLE:
        raise SystemExit("compiled kernel not built; run `pip install -e .` with Cython available")
    print(f"{'workload':40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads():
        tp, rp = best_time(fn, "python", args.repeat)
        tc, rc = best_time(fn, "cython", args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:40} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
