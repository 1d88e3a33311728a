"""Random point sets vs. the closed-form bounds.

For each m and seed: spanning ratio, pair-bound violations and the worst
routing ratio (against delta and against |st|).  Point sets come from numpy's
PCG64 seeded with the set index, so every row is reproducible.
"""
import argparse
import sys

import numpy as np

from thetaspan import bounds, io
from thetaspan.graph import build_theta_graph
from thetaspan.metrics import check_all_pair_bounds, distance_matrix, euclid_matrix
from thetaspan.routing import route_lengths


def sweep(n, sets, ms):
    us, ws = np.nonzero(~np.eye(n, dtype=bool))
    iu = np.triu_indices(n, 1)
    for s in range(sets):
        P = np.random.Generator(np.random.PCG64(s)).random((n, 2))
        for m in ms:
            g = build_theta_graph(P, m)
            D = distance_matrix(g)
            E = euclid_matrix(g)
            row = {"seed": s, "m": m, "spanning": float(np.max(D[iu] / E[iu])),
                   "ub_span": bounds.ub_span(m),
                   "pair_violations": len(check_all_pair_bounds(g, D)),
                   "route_vs_delta": float("nan"), "route_vs_euclid": float("nan"),
                   "ub_route": bounds.ub_route(m)}
            if m >= 7:
                L, arrived, _ = route_lengths(g, us, ws)
                row["route_vs_delta"] = float(np.max(L[arrived] / D[us, ws][arrived]))
                row["route_vs_euclid"] = float(np.max(L[arrived] / E[us, ws][arrived]))
            yield row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--sets", type=int, default=20)
    ap.add_argument("--m-range", default="6..14")
    args = ap.parse_args(argv)
    lo, hi = map(int, args.m_range.split(".."))
    cols = ("seed", "m", "spanning", "ub_span", "pair_violations", "route_vs_delta",
            "route_vs_euclid", "ub_route")
    sys.stdout.write(io.to_csv(sweep(args.n, args.sets, range(lo, hi + 1)), cols))


if __name__ == "__main__":
    main()
