#!/usr/bin/env python3
"""Sweep the constructible (t, r) region and verify every model.

For each grid cell: the presentation relations (projective), the A-map
unitarity, the orbit-Gram signature and the recovered invariants.  Prints
one row per cell and exits nonzero if any cell fails.

Usage: python scripts/run_grid.py [--nt 4] [--nr 4] [--seed 0]
"""

import argparse
import math
import sys

import numpy as np

from horocomb.blockrep import orbit_gram
from horocomb.combination import make_representation
from horocomb.invariants import model_arg
from horocomb.kernelspace import signature_count
from horocomb.su11 import SU11Element, random_su11
from horocomb.verification import amap_checks, relation_checks, sigma_relation_checks


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--nt", type=int, default=4)
    ap.add_argument("--nr", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    failures = 0
    print(f"{'t':>6} {'r':>8} {'relations':>10} {'amap':>10} {'signature':>10} verdict")
    for t in np.linspace(0.2, 0.95, args.nt):
        for frac in np.linspace(0.0, 1.0, args.nr):
            r = frac * t * math.pi / 2
            model = make_representation(float(t), float(r))
            checks = (
                relation_checks(model)
                + sigma_relation_checks(model)
                + amap_checks(model)
            )
            rel = max(c["residual"] for c in checks if c["name"].startswith(("relation", "sigma")))
            ama = max(c["residual"] for c in checks if c["name"].startswith("amap"))
            els = [SU11Element.identity()] + [random_su11(rng) for _ in range(7)]
            sig = signature_count(orbit_gram(model, els))
            ok = all(c["pass"] for c in checks) and sig[0] == 1
            ok = ok and abs(model_arg(model) - r) < 1e-12
            failures += 0 if ok else 1
            print(
                f"{t:6.3f} {r:8.4f} {rel:10.2e} {ama:10.2e} {str(sig):>10} "
                f"{'ok' if ok else 'FAIL'}"
            )
    print(f"\n{failures} failing cells")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
