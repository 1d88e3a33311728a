"""Acceptance criteria 1-9, each at its stated tolerance and time budget.

Every test prints ``criterion N: PASS/FAIL`` and the collected table is
repeated in pytest's terminal summary.
"""
import math
import time

import numpy as np
import pytest

from conftest import brute_force_theta_edges, floyd_warshall, record_acceptance, rng_for
from thetaspan import adversarial as adv
from thetaspan import bounds, io
from thetaspan.cli import main
from thetaspan.errors import HypothesisViolation
from thetaspan.geometry import (
    ConeSystem,
    boundary_parallel_check,
    calculation_constant,
    four_points_inequality,
)
from thetaspan.graph import build_theta_graph
from thetaspan.metrics import (
    check_all_pair_bounds,
    distance_matrix,
    euclid_matrix,
    shortest_path,
    spanning_ratio,
)
from thetaspan.routing import route_lengths, theta_route


def finish(n, checks, detail, t0, budget):
    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < budget
    record_acceptance(n, ok, f"{detail} [{elapsed:.1f}s / {budget}s]")
    assert all(checks), detail
    assert elapsed < budget, f"took {elapsed:.1f}s"


def test_criterion_1_bounds(capsys):
    t0 = time.perf_counter()
    main(["bounds", "--m", "7"])
    _, (r7,) = io.from_csv(capsys.readouterr().out)
    main(["bounds", "--m", "6"])
    _, (r6,) = io.from_csv(capsys.readouterr().out)
    checks = [abs(r7["ub_span"] - 3.5132) <= 5e-4, abs(r7["legacy_rs"] - 7.5625) <= 5e-4,
              abs(r6["ub_span"] - 2) <= 1e-12, abs(r6["lb_span"] - 2) <= 1e-12]
    finish(1, checks, f"m=7 ub={r7['ub_span']:.5f} legacy={r7['legacy_rs']:.5f}; "
           f"m=6 ub={r6['ub_span']!r} lb={r6['lb_span']!r}", t0, 1.0)


def test_criterion_2_4k2_tight():
    t0 = time.perf_counter()
    checks, parts = [], []
    for k in (1, 2, 3):
        target = 1 + 2 * math.sin(math.pi / (4 * k + 2))
        gaps = []
        for eps in (1e-5, 5e-6):
            out = adv.gen_span_4k2(k, eps)
            gaps.append(target - spanning_ratio(out.graph()).max_ratio)
        checks += [0 <= gaps[0] <= 1e-3, 0.45 <= gaps[1] / gaps[0] <= 0.55]
        parts.append(f"k={k} gap={gaps[0]:.2e} halved-ratio={gaps[1] / gaps[0]:.3f}")
    finish(2, checks, "; ".join(parts), t0, 10.0)


def test_criterion_3_lower_bound_gadgets():
    t0 = time.perf_counter()
    checks, parts = [], []
    for gen in (adv.gen_span_4k3, adv.gen_span_4k4, adv.gen_span_4k5):
        out = gen(1, 1e-4)
        m = out.m
        r = spanning_ratio(out.graph()).max_ratio
        checks.append(bounds.lb_span(m) - 1e-2 <= r <= bounds.ub_span(m) + 1e-9)
        parts.append(f"m={m} ratio={r:.5f} lb={bounds.lb_span(m):.5f} ub={bounds.ub_span(m):.5f}")
    finish(3, checks, "; ".join(parts), t0, 30.0)


def test_criterion_4_non_monotone():
    t0 = time.perf_counter()
    r = spanning_ratio(adv.gen_span_4k4(1, 1e-4).graph()).max_ratio
    finish(4, [r > bounds.ub_span(6)], f"m=8 gadget ratio {r:.5f} > ub(6) = 2", t0, 5.0)


def _route_ratios(maker, cycles):
    vs_euclid, vs_delta = [], []
    for n in range(1, cycles + 1):
        out = maker(n)
        g = out.graph()
        r = theta_route(g, 0, 1)
        assert r.arrived and r.vertices == out.intended_path
        uw = g.length(0, 1)
        vs_euclid.append(r.length / uw)
        vs_delta.append(r.length / shortest_path(g, 0, 1).length)
    return vs_euclid, vs_delta


def test_criterion_5_routing_tight():
    t0 = time.perf_counter()
    checks, parts = [], []
    for name, maker, cycles, m in (("4k+4 k=1", lambda n: adv.gen_route_4k4(1, n), 10, 8),
                                   ("theta10", adv.gen_route_theta10, 12, 10)):
        target = bounds.ub_route(m)
        ve, vd = _route_ratios(maker, cycles)
        checks += [abs(ve[-1] - target) <= 0.02 * target,
                   all(b > a for a, b in zip(ve, ve[1:])),
                   ve[-1] <= target]
        parts.append(f"{name} cycles={cycles}: route/|uw|={ve[-1]:.5f} route/delta={vd[-1]:.5f} "
                     f"target={target:.5f} increasing={all(b > a for a, b in zip(ve, ve[1:]))}")
    finish(5, checks, "; ".join(parts), t0, 60.0)


@pytest.mark.slow
def test_criterion_6_random_upper_bounds():
    t0 = time.perf_counter()
    n, sets = 100, 1000
    pair_viol = span_viol = route_viol = 0
    worst = {}
    us, ws = np.nonzero(~np.eye(n, dtype=bool))
    for s in range(sets):
        P = rng_for(s).random((n, 2))
        for m in range(6, 15):
            g = build_theta_graph(P, m)
            D = distance_matrix(g)
            pair_viol += len(check_all_pair_bounds(g, D))
            E = euclid_matrix(g)
            iu = np.triu_indices(n, 1)
            span = float(np.max(D[iu] / E[iu]))
            span_viol += span > bounds.ub_span(m) + 1e-9
            worst[m] = max(worst.get(m, 0.0), span)
            if m >= 7:
                L, arrived, _ = route_lengths(g, us, ws)
                route_viol += int(np.sum(~arrived | (L > bounds.ub_route(m) * E[us, ws] + 1e-9)))
    detail = (f"{sets} sets x m=6..14: pair-bound violations={pair_viol}, "
              f"spanning violations={span_viol}, routing violations={route_viol}; worst spanning "
              + ", ".join(f"m={m}:{worst[m]:.3f}" for m in sorted(worst)))
    finish(6, [pair_viol == 0, span_viol == 0, route_viol == 0], detail, t0, 900.0)


def test_criterion_7_oracles():
    t0 = time.perf_counter()
    rng = rng_for(7)
    build_bad = 0
    for _ in range(500):
        n, m = int(rng.integers(2, 51)), int(rng.integers(6, 15))
        P = rng.random((n, 2))
        g = build_theta_graph(P, m)
        build_bad += {(u, i): v for u, i, v in g.edges()} != brute_force_theta_edges(P, m)
    path_bad = 0
    for _ in range(200):
        n, m = int(rng.integers(2, 13)), int(rng.integers(6, 15))
        P = rng.random((n, 2))
        g = build_theta_graph(P, m)
        FW = floyd_warshall(n, g.edges(), P)
        D = distance_matrix(g)
        path_bad += not np.allclose(D, FW, rtol=1e-12, atol=0)
        for u in range(n):
            for w in range(n):
                path_bad += not math.isclose(shortest_path(g, u, w).length, FW[u, w],
                                             rel_tol=1e-12, abs_tol=0)
    finish(7, [build_bad == 0, path_bad == 0],
           f"builder mismatches={build_bad}/500, shortest-path mismatches={path_bad}", t0, 120.0)


def test_criterion_8_partial_order():
    t0 = time.perf_counter()
    rep = bounds.verify_partial_order(1000)
    viol = sum(len(r.violations) for r in rep.results)
    finish(8, [rep.ok, viol == 0], f"{rep.summary()}, violations={viol}", t0, 5.0)


def _sample_four_points(rng, count):
    """Rejection sampling: b and c uniform on the arc from a to d, kept when
    angle(cad) <= angle(bad) <= angle(adc) holds (checked via arc fractions)."""
    accepted = []
    while len(accepted) < count:
        t0 = rng.uniform(0, 2 * math.pi)
        span = rng.uniform(0.05, 2 * math.pi - 0.05)
        fb, fc = rng.uniform(0.001, 0.999, 2)
        sb, sc = 1 - fb, 1 - fc  # inscribed angle at a grows with the arc to d
        if sc <= sb <= 1 - sc:
            pt = lambda f: (math.cos(t0 + f * span), math.sin(t0 + f * span))
            accepted.append((pt(0.0), pt(fb), pt(fc), pt(1.0)))
    return accepted


def test_criterion_9_lemma_oracles():
    t0 = time.perf_counter()
    quads = _sample_four_points(rng_for(9), 100_000)
    four_bad = 0
    for q in quads:
        try:
            four_bad += not four_points_inequality(*q)
        except HypothesisViolation:
            four_bad += 1
    const_bad = 0
    for m in range(7, 31):
        th = 2 * math.pi / m
        for fb in np.linspace(0, 1, 202)[1:-1]:
            for fg in np.linspace(0, 1, 201):
                const_bad += not calculation_constant(th, fb * (math.pi - th) / 2,
                                                      fg * th / 2) > 0
    trig = bounds.check_trig_inequalities(10_000)
    bp_bad = sum(boundary_parallel_check(ConeSystem(m)) != (m % 4 == 2) for m in range(3, 201))
    finish(9, [four_bad == 0, const_bad == 0, trig.ok, bp_bad == 0],
           f"four-points failures={four_bad}/1e5, constant non-positive={const_bad}, "
           f"trig violations={len(trig.violations)}, boundary-parallel mismatches={bp_bad}",
           t0, 120.0)
