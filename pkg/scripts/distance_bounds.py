"""Minimum distance against l_d, u_d and B_d, exact where enumeration fits the budget."""

import argparse
import csv
import sys
from dataclasses import dataclass

from edgecodes.codes import evaluation_profile, min_distance
from edgecodes.formulas import theorem3_bounds
from edgecodes.gf import GF
from edgecodes.graphs import from_dsl
from edgecodes.points import DEFAULT_BUDGET, build_x


@dataclass
class DistanceConfig:
    graph: str = "union:cycle:4+cycle:4"
    q: int = 3
    d_max: int = 4
    budget: int = DEFAULT_BUDGET


def run(cfg: DistanceConfig):
    g = from_dsl(cfg.graph)
    X = build_x(g, GF(cfg.q))
    for d in range(1, cfg.d_max + 1):
        prof = evaluation_profile(X, d)
        b = theorem3_bounds(g, cfg.q, d, prof.H)
        dist = min_distance(prof, budget=cfg.budget, lower=b.l_d)
        yield {
            "d": d, "length": len(X), "dim": prof.H, "delta_lo": dist.lo, "delta_hi": dist.hi,
            "exact": int(dist.exact or dist.lo == dist.hi), "l_d": b.l_d, "u_d": b.u_d, "B_d": b.B_d,
            "inside": int(b.l_d <= dist.hi and dist.lo <= min(b.u_d, b.B_d)),
        }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", default=DistanceConfig.graph)
    ap.add_argument("--q", type=int, default=DistanceConfig.q)
    ap.add_argument("--d-max", type=int, default=DistanceConfig.d_max)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    args = ap.parse_args()
    cfg = DistanceConfig(args.graph, args.q, args.d_max, args.budget)
    w = None
    for row in run(cfg):
        if w is None:
            w = csv.DictWriter(sys.stdout, fieldnames=list(row), lineterminator="\n")
            w.writeheader()
        w.writerow(row)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
