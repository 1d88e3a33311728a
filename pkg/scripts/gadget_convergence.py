"""Convergence of the adversarial gadgets.

Spanning gadgets: measured ratio and gap to the closed form as epsilon shrinks.
Routing gadgets: routed length / |uw| as the number of spiral steps grows.
Writes plot-ready CSV to stdout.
"""
import argparse
import sys

from thetaspan import adversarial as adv
from thetaspan import io
from thetaspan.errors import GadgetError
from thetaspan.metrics import spanning_ratio
from thetaspan.routing import theta_route


def spanning_rows(ks, epsilons):
    for family, gen in sorted(adv.SPAN_GENERATORS.items()):
        for k in ks:
            for eps in epsilons:
                try:
                    out = gen(k, eps)
                    note = ""
                except GadgetError:
                    out = gen(k, eps, strict=False)
                    note = f"shortcut {out.shortcut_gap:.2e}"
                r = spanning_ratio(out.graph()).max_ratio
                yield {"kind": "spanning", "family": family, "m": out.m, "param": eps,
                       "measured": r, "target": out.intended_ratio,
                       "gap": out.intended_ratio - r, "note": note}


def routing_rows(max_cycles):
    makers = [("4k+4", 8, lambda n: adv.gen_route_4k4(1, n)),
              ("4k+4", 12, lambda n: adv.gen_route_4k4(2, n)),
              ("theta10", 10, adv.gen_route_theta10)]
    for family, m, maker in makers:
        for n in range(1, max_cycles + 1):
            try:
                out = maker(n)
            except GadgetError as exc:
                yield {"kind": "routing", "family": family, "m": m, "param": n,
                       "measured": float("nan"), "target": adv.route_series(m, n),
                       "gap": float("nan"), "note": str(exc)}
                break
            r = theta_route(out.graph(), 0, 1).length
            yield {"kind": "routing", "family": family, "m": m, "param": n, "measured": r,
                   "target": out.intended_ratio, "gap": out.intended_ratio - r, "note": ""}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks", default="1,2,3")
    ap.add_argument("--epsilons", default="1e-3,1e-4,1e-5,5e-6")
    ap.add_argument("--max-cycles", type=int, default=16)
    args = ap.parse_args(argv)
    ks = [int(k) for k in args.ks.split(",")]
    eps = [float(e) for e in args.epsilons.split(",")]
    rows = list(spanning_rows(ks, eps)) + list(routing_rows(args.max_cycles))
    cols = ("kind", "family", "m", "param", "measured", "target", "gap", "note")
    sys.stdout.write(io.to_csv(rows, cols))


if __name__ == "__main__":
    main()
