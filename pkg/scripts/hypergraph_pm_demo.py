"""Count perfect matchings of random planar hypergraphs with gcd >= 5.

Shows the tractable pinning route agreeing with brute-force subset
enumeration, then the hard-regime verdicts for small edge sizes.

Usage: python scripts/hypergraph_pm_demo.py [--trials N]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from planar_holant.classify import hypergraph_verdict
from planar_holant.solvers import hypergraph_pm

from test_solvers import brute_hpm, random_hypergraph5


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=30)
    args = ap.parse_args()
    mismatches = 0
    for seed in range(args.trials):
        h = random_hypergraph5(seed)
        verdict, value = hypergraph_pm(h)
        brute = brute_hpm(h)
        mark = "ok" if value == brute else "MISMATCH"
        if value != brute:
            mismatches += 1
        print("seed %3d  sizes %-16s  %-14s  pm=%s  brute=%s  %s"
              % (seed, sorted(h.sizes()), verdict.case, value, brute, mark))
    print()
    for sizes in ([5, 10], [1, 2], [3, 6], [4, 8], [7]):
        v = hypergraph_verdict(sizes)
        tag = "Tractable(%s)" % v.case if v.tractable \
            else "PHard(%s)" % v.obstruction
        print("sizes %-8s -> %s" % (sizes, tag))
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
