"""Theta-routing and its competitive ratio.

At the current vertex ``u`` the router looks at the cone of ``u`` that
contains the destination ``t`` and follows the edge ``u`` added in that
cone.  Under the default ``direct="cone"`` reading, "a direct edge to t"
means exactly that edge when it happens to end at ``t``.  With
``direct="any"`` an undirected edge to ``t`` owned by ``t`` is also taken.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import cone_of
from .graph import ThetaGraph, adjacency_matrix, pairwise_cones
from .metrics import StretchReport, distance_matrix, euclid_matrix, select_pairs

ARRIVED = "arrived"
STEP_LIMIT = "step_limit_exceeded"


@dataclass(frozen=True)
class RouteResult:
    vertices: tuple[int, ...]
    length: float
    status: str

    @property
    def arrived(self) -> bool:
        return self.status == ARRIVED


def _default_limit(g: ThetaGraph, step_limit: int | None) -> int:
    limit = 10 * g.n if step_limit is None else int(step_limit)
    if limit < 1:
        raise ValueError("step_limit must be >= 1")
    return limit


def theta_route(g: ThetaGraph, s: int, t: int, step_limit: int | None = None,
                direct: str = "cone") -> RouteResult:
    limit = _default_limit(g, step_limit)
    for v in (s, t):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    if direct not in ("cone", "any"):
        raise ValueError("direct must be 'cone' or 'any'")
    neighbours = None
    if direct == "any":
        A = adjacency_matrix(g)
        neighbours = set(A[:, t].nonzero()[0].tolist())
    path = [s]
    length = 0.0
    u = s
    while u != t:
        if len(path) > limit:
            return RouteResult(tuple(path), length, STEP_LIMIT)
        if neighbours is not None and u in neighbours:
            nxt = t
        else:
            nxt = int(g.out[u, cone_of(g.points[u], g.points[t], g.cs)])
        length += g.length(u, nxt)
        path.append(nxt)
        u = nxt
    return RouteResult(tuple(path), length, ARRIVED)


def next_hop_matrix(g: ThetaGraph, direct: str = "cone") -> np.ndarray:
    """``NH[u, t]``: the vertex theta-routing moves to from ``u`` when heading for ``t``."""
    cone, _, _ = pairwise_cones(g.points, g.cs)
    rows = np.arange(g.n)[:, None]
    nh = g.out[rows, np.maximum(cone, 0)]
    np.fill_diagonal(nh, np.arange(g.n))
    if direct == "any":
        A = adjacency_matrix(g).toarray() > 0
        nh = np.where(A, np.arange(g.n)[None, :], nh)
    elif direct != "cone":
        raise ValueError("direct must be 'cone' or 'any'")
    return nh


def route_lengths(g: ThetaGraph, us, ws, step_limit: int | None = None,
                  direct: str = "cone"):
    """Route every ``(us[k], ws[k])`` pair simultaneously.

    Returns ``(length, arrived, hops)`` arrays.  Lengths accumulate hop by hop
    in the same order as :func:`theta_route`.
    """
    limit = _default_limit(g, step_limit)
    nh = next_hop_matrix(g, direct)
    E = euclid_matrix(g)
    pos = np.array(us, dtype=np.int64)
    ws = np.asarray(ws, dtype=np.int64)
    length = np.zeros(len(pos))
    hops = np.zeros(len(pos), dtype=np.int64)
    active = pos != ws
    while active.any():
        idx = np.flatnonzero(active & (hops < limit))
        if len(idx) == 0:
            break
        nxt = nh[pos[idx], ws[idx]]
        length[idx] += E[pos[idx], nxt]
        pos[idx] = nxt
        hops[idx] += 1
        active[idx] = nxt != ws[idx]
    return length, ~active, hops


def routing_ratio(g: ThetaGraph, pairs="all", seed: int = 0,
                  step_limit: int | None = None, direct: str = "cone",
                  per_pair: bool = False, threads: int = 1) -> StretchReport:
    """Max of route length over graph distance; Euclidean ratio reported alongside.

    Pairs are ordered (routing is not symmetric).  Pairs that hit the step
    limit are listed in ``failures`` and excluded from the maxima.
    """
    if g.n < 2:
        raise ValueError("routing ratio needs at least two points")
    us, ws = select_pairs(g.n, pairs, seed, ordered=True)
    if len(us) == 0:
        raise ValueError("empty pair selection")
    length, arrived, hops = route_lengths(g, us, ws, step_limit, direct)
    src = np.unique(us)
    D = distance_matrix(g, src, threads)
    delta = D[np.searchsorted(src, us), ws]
    euclid = euclid_matrix(g)[us, ws]
    r_delta = np.where(arrived, length / delta, -np.inf)
    r_euclid = np.where(arrived, length / euclid, -np.inf)
    failures = [
        {"s": int(us[k]), "t": int(ws[k]), "hops": int(hops[k]), "status": STEP_LIMIT}
        for k in np.flatnonzero(~arrived)
    ]
    if arrived.any():
        k = int(np.flatnonzero(r_delta == r_delta.max())[0])
        j = int(np.flatnonzero(r_euclid == r_euclid.max())[0])
        report = StretchReport(float(r_delta[k]), (int(us[k]), int(ws[k])), len(us),
                               max_ratio_euclid=float(r_euclid[j]),
                               witness_euclid=(int(us[j]), int(ws[j])), failures=failures)
    else:
        report = StretchReport(float("nan"), (-1, -1), len(us), failures=failures)
    if per_pair:
        report.per_pair = [
            {"s": int(s), "t": int(t), "route_len": float(L) if a else float("nan"),
             "delta": float(d), "euclid": float(e),
             "ratio_vs_delta": float(L / d) if a else float("nan"),
             "ratio_vs_euclid": float(L / e) if a else float("nan"),
             "status": ARRIVED if a else STEP_LIMIT}
            for s, t, L, d, e, a in zip(us, ws, length, delta, euclid, arrived)
        ]
    return report
