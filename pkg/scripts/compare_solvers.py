"""Race every polynomial-time solver against brute-force contraction.

Generates random in-precondition instances per solver family, checks exact
agreement, and reports instance sizes and wall-clock totals.

Usage: python scripts/compare_solvers.py [--trials N] [--seed S]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from planar_holant.solvers import (
    fkt_count_pm, product_eval, affine_eval, vanishing_eval,
    EOInstance, eo_geneq_eval,
)

from test_solvers import (
    brute_pm, random_weighted_graph, random_product_grid,
    random_affine_grid, random_vanishing_grid, build_instance_biased,
)


def race(name, fast, slow, instances):
    t_fast = t_slow = 0.0
    mismatches = 0
    for inst in instances:
        t0 = time.perf_counter()
        a = fast(inst)
        t1 = time.perf_counter()
        b = slow(inst)
        t2 = time.perf_counter()
        t_fast += t1 - t0
        t_slow += t2 - t1
        if a != b:
            mismatches += 1
    status = "ok" if mismatches == 0 else "%d MISMATCHES" % mismatches
    print("%-12s %4d instances  fast %7.3fs  brute %7.3fs  %s"
          % (name, len(instances), t_fast, t_slow, status))
    return mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    base = args.seed
    n = args.trials
    bad = 0
    bad += race("fkt", fkt_count_pm, brute_pm,
                [random_weighted_graph(base + s) for s in range(n)])
    bad += race("product", product_eval, lambda g: g.holant(cap=40),
                [random_product_grid(base + s) for s in range(n)])
    bad += race("affine", affine_eval, lambda g: g.holant(cap=40),
                [random_affine_grid(base + s) for s in range(n)])
    bad += race("vanishing", vanishing_eval, lambda g: g.holant(cap=40),
                [random_vanishing_grid(base + s, "+-"[s % 2])
                 for s in range(n)])
    bad += race("eo-pinning", lambda g: eo_geneq_eval(EOInstance(g)),
                lambda g: g.holant(cap=80),
                [build_instance_biased(base + s) for s in range(n)])
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
