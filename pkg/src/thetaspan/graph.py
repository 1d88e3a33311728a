"""Theta-graph construction.

Every vertex ``u`` adds, for each non-empty cone, one directed edge to the
vertex whose projection on that cone's bisector is smallest.  The builder
is a vectorised O(n^2 m) scan; ``brute_force_theta_edges`` in the tests is
the pairwise reference it is checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, GeneralPositionError
from .geometry import (
    DEFAULT_TAU,
    ConeSystem,
    cone_index_of_angle,
    direction_angle,
    points_array,
    validate_general_position,
)


@dataclass(frozen=True, eq=False)
class ThetaGraph:
    points: np.ndarray  # (n, 2), read-only
    cs: ConeSystem
    out: np.ndarray  # (n, m) target index per (vertex, cone), -1 when the cone is empty

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return self.cs.m

    def edges(self) -> list[tuple[int, int, int]]:
        """Directed cone edges as ``(owner, cone, target)``, sorted."""
        us, cones = np.nonzero(self.out >= 0)
        return [(int(u), int(i), int(self.out[u, i])) for u, i in zip(us, cones)]

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for u, _, v in self.edges()})

    def length(self, u: int, v: int) -> float:
        d = self.points[v] - self.points[u]
        return float(np.hypot(d[0], d[1]))

    def same_edges(self, other: "ThetaGraph") -> bool:
        return self.m == other.m and np.array_equal(self.out, other.out)

    @classmethod
    def from_edges(cls, points, m: int, edges: Sequence[Sequence[int]]) -> "ThetaGraph":
        P = _frozen(points_array(points))
        cs = ConeSystem(m)
        out = np.full((len(P), cs.m), -1, dtype=np.int64)
        for u, i, v in edges:
            if out[u, i] != -1:
                raise DegenerateInputError(f"two edges stored for vertex {u}, cone {i}")
            out[u, i] = v
        out.setflags(write=False)
        return cls(P, cs, out)


def _frozen(P: np.ndarray) -> np.ndarray:
    P = np.array(P, dtype=float)
    P.setflags(write=False)
    return P


def pairwise_cones(P: np.ndarray, cs: ConeSystem):
    """Cone index, bisector projection and Euclidean length for every ordered pair.

    Entry ``[u, v]`` describes ``v`` as seen from ``u``; the diagonal has cone -1.
    """
    dx = P[None, :, 0] - P[:, None, 0]
    dy = P[None, :, 1] - P[:, None, 1]
    cone = cone_index_of_angle(direction_angle(dx, dy), cs)
    ang = cone * cs.theta
    proj = dx * np.sin(ang) + dy * np.cos(ang)
    dist = np.hypot(dx, dy)
    np.fill_diagonal(cone, -1)
    return cone, proj, dist


def check_distinct(P: np.ndarray) -> None:
    if len(P) < 2:
        return
    order = np.lexsort((P[:, 1], P[:, 0]))
    S = P[order]
    same = np.flatnonzero((S[1:] == S[:-1]).all(axis=1))
    if len(same):
        a, b = sorted((int(order[same[0]]), int(order[same[0] + 1])))
        raise DegenerateInputError(f"duplicate points: vertices {a} and {b}")


def build_theta_graph(
    points, cs: ConeSystem | int, strict: bool = True, tau: float = DEFAULT_TAU
) -> ThetaGraph:
    """Build the theta-graph of ``points``.

    In strict mode the point set must pass ``validate_general_position``.
    With ``strict=False`` ties in projection distance are broken by smaller
    Euclidean distance, then smaller vertex index.
    """
    if not isinstance(cs, ConeSystem):
        cs = ConeSystem(cs)
    P = _frozen(points_array(points))
    check_distinct(P)
    if strict:
        report = validate_general_position(P, cs, tau)
        if not report.ok:
            raise GeneralPositionError(report)
    n = len(P)
    out = np.full((n, cs.m), -1, dtype=np.int64)
    if n >= 2:
        cone, proj, dist = pairwise_cones(P, cs)
        rows = np.arange(n)
        for i in range(cs.m):
            mask = cone == i
            key = np.where(mask, proj, np.inf)
            best = np.argmin(key, axis=1)
            bval = key[rows, best]
            present = np.isfinite(bval)
            ties = present & ((key == bval[:, None]).sum(axis=1) > 1)
            for u in np.flatnonzero(ties):
                cands = np.flatnonzero(key[u] == bval[u])
                best[u] = min(cands, key=lambda v: (dist[u, v], v))
            out[present, i] = best[present]
    out.setflags(write=False)
    return ThetaGraph(P, cs, out)


def undirected_adjacency(g: ThetaGraph) -> dict[int, dict[int, float]]:
    """Symmetric neighbour map merging all cone edges; weights are Euclidean lengths."""
    adj: dict[int, dict[int, float]] = {u: {} for u in range(g.n)}
    for u, v in g.undirected_edges():
        w = g.length(u, v)
        adj[u][v] = w
        adj[v][u] = w
    return adj


def adjacency_matrix(g: ThetaGraph):
    """The undirected view as a symmetric scipy CSR matrix."""
    from scipy.sparse import csr_matrix

    pairs = g.undirected_edges()
    if not pairs:
        return csr_matrix((g.n, g.n))
    a = np.array(pairs, dtype=np.int64)
    d = g.points[a[:, 1]] - g.points[a[:, 0]]
    w = np.hypot(d[:, 0], d[:, 1])
    rows = np.concatenate([a[:, 0], a[:, 1]])
    cols = np.concatenate([a[:, 1], a[:, 0]])
    return csr_matrix((np.concatenate([w, w]), (rows, cols)), shape=(g.n, g.n))
