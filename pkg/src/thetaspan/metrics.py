"""Shortest paths, stretch measurement and per-pair bound checks."""
from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.sparse.csgraph import dijkstra

from .bounds import classify, pair_bound
from .errors import DisconnectedError, FamilyError
from .graph import ThetaGraph, adjacency_matrix, undirected_adjacency

BOUND_TOL = 1e-9


@dataclass(frozen=True)
class PathResult:
    vertices: tuple[int, ...]
    length: float


@dataclass
class StretchReport:
    max_ratio: float
    witness_pair: tuple[int, int]
    n_pairs: int
    per_pair: list[dict] | None = None
    # routing reports also carry the ratio against Euclidean distance
    max_ratio_euclid: float | None = None
    witness_euclid: tuple[int, int] | None = None
    failures: list[dict] = field(default_factory=list)


class BoundCheck(NamedTuple):
    stretch: float
    bound: float
    ok: bool


def shortest_path(g: ThetaGraph, u: int, w: int) -> PathResult:
    """Label-setting (Dijkstra) search on the undirected view, stopping at ``w``."""
    _check_vertex(g, u)
    _check_vertex(g, w)
    if u == w:
        return PathResult((u,), 0.0)
    adj = undirected_adjacency(g)
    dist = {u: 0.0}
    prev: dict[int, int] = {}
    heap = [(0.0, u)]
    done = set()
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        if x == w:
            break
        for y, wt in adj[x].items():
            nd = d + wt
            if nd < dist.get(y, math.inf):
                dist[y] = nd
                prev[y] = x
                heapq.heappush(heap, (nd, y))
    if w not in done:
        raise DisconnectedError(f"no path between {u} and {w}")
    path = [w]
    while path[-1] != u:
        path.append(prev[path[-1]])
    path.reverse()
    length = math.fsum(g.length(a, b) for a, b in zip(path, path[1:]))
    return PathResult(tuple(path), length)


def _check_vertex(g: ThetaGraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for {g.n} points")


def distance_matrix(g: ThetaGraph, sources: Sequence[int] | None = None,
                    threads: int = 1) -> np.ndarray:
    """Graph distances from ``sources`` (all vertices by default) to every vertex."""
    A = adjacency_matrix(g)
    src = np.arange(g.n) if sources is None else np.asarray(sources, dtype=np.int64)
    if threads <= 1 or len(src) < 2 * threads:
        D = dijkstra(A, directed=False, indices=src)
    else:
        chunks = np.array_split(src, threads)
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: dijkstra(A, directed=False, indices=c), chunks))
        D = np.vstack(parts)
    return np.atleast_2d(D)


def euclid_matrix(g: ThetaGraph) -> np.ndarray:
    d = g.points[None, :, :] - g.points[:, None, :]
    return np.hypot(d[..., 0], d[..., 1])


def alpha_matrix(g: ThetaGraph) -> np.ndarray:
    """``alpha[u, w]``: angle between ``uw`` and the bisector of T(u, w)."""
    P, cs = g.points, g.cs
    dx = P[None, :, 0] - P[:, None, 0]
    dy = P[None, :, 1] - P[:, None, 1]
    phi = np.mod(np.arctan2(dx, dy), 2 * math.pi)
    cone = np.mod(np.floor((phi + cs.theta / 2) / cs.theta).astype(np.int64), cs.m)
    ang = cone * cs.theta
    along = dx * np.sin(ang) + dy * np.cos(ang)
    across = dx * np.cos(ang) - dy * np.sin(ang)
    a = np.arctan2(np.abs(across), along)
    np.fill_diagonal(a, 0.0)
    return a


def select_pairs(n: int, pairs="all", seed: int = 0, ordered: bool = False):
    """Resolve a pair selection into index arrays ``(us, ws)`` in lexicographic order.

    ``pairs`` is ``"all"``, an integer sample size (drawn with PCG64 seeded by
    ``seed``) or an explicit sequence of ``(u, w)`` pairs.
    """
    if isinstance(pairs, str):
        if pairs != "all":
            raise ValueError(f"unknown pair selection {pairs!r}")
        pairs = None
    if pairs is None or isinstance(pairs, (int, np.integer)):
        if ordered:
            us, ws = np.nonzero(~np.eye(n, dtype=bool))
        else:
            us, ws = np.triu_indices(n, 1)
        if pairs is not None and pairs < len(us):
            rng = np.random.Generator(np.random.PCG64(seed))
            pick = np.sort(rng.choice(len(us), size=int(pairs), replace=False))
            us, ws = us[pick], ws[pick]
        return us.astype(np.int64), ws.astype(np.int64)
    arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    if len(arr) and (arr.min() < 0 or arr.max() >= n):
        raise IndexError("pair index out of range")
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order, 0], arr[order, 1]


def _argmax_lex(values: np.ndarray) -> int:
    # first index among exact maxima; pairs are already in lexicographic order
    return int(np.flatnonzero(values == values.max())[0])


def spanning_ratio(g: ThetaGraph, pairs="all", seed: int = 0, per_pair: bool = False,
                   threads: int = 1) -> StretchReport:
    """Maximum of ``delta(u, w) / |uw|`` over the selected pairs."""
    if g.n < 2:
        raise ValueError("spanning ratio needs at least two points")
    us, ws = select_pairs(g.n, pairs, seed)
    if len(us) == 0:
        raise ValueError("empty pair selection")
    src = np.unique(us)
    D = distance_matrix(g, src, threads)
    row = np.searchsorted(src, us)
    delta = D[row, ws]
    bad = ~np.isfinite(delta)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise DisconnectedError(f"no path between {us[k]} and {ws[k]}")
    E = euclid_matrix(g)
    euclid = E[us, ws]
    ratio = delta / euclid
    k = _argmax_lex(ratio)
    rows = None
    if per_pair:
        rows = bound_rows(g, us, ws, delta, euclid)
    return StretchReport(float(ratio[k]), (int(us[k]), int(ws[k])), len(us), rows)


def bound_rows(g: ThetaGraph, us, ws, delta, euclid) -> list[dict]:
    A = alpha_matrix(g)
    ratio = delta / euclid
    try:
        bound = pair_bound(g.m, A[us, ws], A[ws, us])
        ok = ratio <= bound + BOUND_TOL
    except FamilyError:
        bound = np.full(len(us), math.nan)
        ok = np.ones(len(us), dtype=bool)
    return [
        {"u": int(u), "w": int(w), "euclid": float(e), "delta": float(d), "ratio": float(r),
         "alpha": float(a), "bound": float(b), "ok": bool(o)}
        for u, w, e, d, r, a, b, o in zip(us, ws, euclid, delta, ratio, A[us, ws], bound, ok)
    ]


def pair_bound_check(g: ThetaGraph, u: int, w: int, tol: float = BOUND_TOL) -> BoundCheck:
    """Compare the pair's stretch with the family bound at its canonical-triangle angle."""
    from .geometry import canonical_triangle

    classify(g.m)
    _check_vertex(g, u)
    _check_vertex(g, w)
    if u == w:
        raise ValueError("pair bound needs two distinct vertices")
    pu, pw = g.points[u], g.points[w]
    a_uw = canonical_triangle(pu, pw, g.cs).alpha
    a_wu = canonical_triangle(pw, pu, g.cs).alpha
    bound = float(pair_bound(g.m, a_uw, a_wu))
    stretch = shortest_path(g, u, w).length / g.length(u, w)
    return BoundCheck(stretch, bound, stretch <= bound + tol)


def check_all_pair_bounds(g: ThetaGraph, D: np.ndarray | None = None,
                          tol: float = BOUND_TOL) -> list[tuple[int, int, float, float]]:
    """Vectorised pair_bound_check over all unordered pairs; returns the violations."""
    classify(g.m)
    if D is None:
        D = distance_matrix(g)
    us, ws = np.triu_indices(g.n, 1)
    E = euclid_matrix(g)
    A = alpha_matrix(g)
    ratio = D[us, ws] / E[us, ws]
    bound = pair_bound(g.m, A[us, ws], A[ws, us])
    bad = np.flatnonzero(~(ratio <= bound + tol))
    return [(int(us[k]), int(ws[k]), float(ratio[k]), float(bound[k])) for k in bad]
