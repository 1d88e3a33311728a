"""Adversarial point sets realising the spanning and routing lower bounds.

All gadgets live in the canonical frame: ``u`` (vertex 0) at the origin and
``w`` (vertex 1) at unit distance inside cone 0 of ``u``.

Spanning gadgets are produced by one recursive rule: a placement ``p`` that
blocks the edge ``a -> b`` is itself treated as a new pair ``(p, b)`` and
blocked at the next level, and the same happens from the reverse side
``b -> a``.  This applies each step of the construction to every symmetric
canonical triangle, which is what keeps shortcut edges out.  Each branch uses
a slightly different offset so that mirrored placements never line up
exactly (general position).

Routing gadgets are spirals around ``w``: every spiral vertex sits just
inside a corner of the previous vertex's canonical triangle towards ``w``.
Auxiliary vertices ``x_j`` sit between consecutive spiral vertices and hide
the inner spiral turns, so theta-routing from ``u`` has to walk every step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bounds
from .errors import DomainError, GadgetError, GeneralPositionError, ThetaSpanError
from .geometry import (
    ConeSystem,
    CanonicalTriangle,
    canonical_triangle,
    cone_index_of_angle,
    cone_of,
    direction_angle,
)
from .graph import ThetaGraph, build_theta_graph
from .metrics import shortest_path
from .routing import theta_route

EPS_MAX = 1e-2
EPS_MIN = 1e-9
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GadgetSpec:
    family: str
    k: int
    epsilon: float
    kind: str = "spanning"  # "spanning" | "routing"
    cycles: int | None = None

    @property
    def m(self) -> int:
        return 4 * self.k + int(self.family[-1])


@dataclass
class GadgetOutput:
    spec: GadgetSpec
    points: np.ndarray
    intended_ratio: float
    intended_path: tuple[int, ...] | None = None
    labels: list[str] = field(default_factory=list)
    source: int = 0
    dest: int = 1
    # how much shorter than the intended path the actual shortest path is
    # (only non-zero for gadgets generated with strict=False)
    shortcut_gap: float = 0.0

    @property
    def m(self) -> int:
        return self.spec.m

    def graph(self) -> ThetaGraph:
        return build_theta_graph(self.points, self.m)

    def metadata(self) -> dict:
        s = self.spec
        return {"kind": s.kind, "family": s.family, "k": s.k, "epsilon": s.epsilon,
                "cycles": s.cycles, "intended_ratio": self.intended_ratio,
                "source": self.source, "dest": self.dest}


def _check_eps(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not EPS_MIN <= epsilon <= EPS_MAX:
        raise DomainError(f"epsilon must lie in [{EPS_MIN:g}, {EPS_MAX:g}], got {epsilon!r}")
    return epsilon


def _check_k(k: int, k_min: int = 1) -> int:
    if int(k) != k or k < k_min:
        raise DomainError(f"k must be an integer >= {k_min}, got {k!r}")
    return int(k)


# ---------------------------------------------------------------------------
# small planar helpers (numpy 2-vectors)


def _vec(p) -> np.ndarray:
    return np.array([p.x, p.y]) if hasattr(p, "x") else np.asarray(p, dtype=float)


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / math.hypot(v[0], v[1])


def _norm(v) -> float:
    return math.hypot(v[0], v[1])


def _ray(angle: float) -> np.ndarray:
    """Unit direction at ``angle`` measured clockwise from +y."""
    return np.array([math.sin(angle), math.cos(angle)])


def _cross(d, v) -> float:
    return d[0] * v[1] - d[1] * v[0]


def _intersect(p, d, q, e) -> np.ndarray:
    t = np.linalg.solve(np.array([d, -e]).T, q - p)
    return p + t[0] * d


def _corners(a, b, cs):
    T = canonical_triangle(a, b, cs)
    return _vec(T.corner_a), _vec(T.corner_b), T


def _inset_corner(a, b, cs, which: str, eps: float) -> np.ndarray:
    """Corner ``which`` of T(a, b) moved ``eps * height`` along its inward angle bisector.

    ``which`` is ``"a"`` (counterclockwise), ``"b"`` (clockwise) or ``"far"``
    (the corner farther from ``b``).
    """
    A, B, T = _corners(a, b, cs)
    if which == "far":
        which = "a" if _norm(A - b) > _norm(B - b) else "b"
    c, o = (A, B) if which == "a" else (B, A)
    d = _unit(_unit(_vec(T.apex) - c) + _unit(o - c))
    return c + eps * T.height * d


# ---------------------------------------------------------------------------
# spanning gadgets

# A rule places a blocker for the pair (a, b).  ``ctx`` is the canonical
# triangle of the parent pair, i.e. the triangle whose edge (a, b) blocked.
Rule = Callable[[np.ndarray, np.ndarray, "CanonicalTriangle | None", ConeSystem, float], np.ndarray]


def _far(a, b, ctx, cs, eps):
    return _inset_corner(a, b, cs, "far", eps)


def _outside(a, b, ctx, cs, eps):
    # the corner of T(a, b) that is not inside the parent triangle
    A, B, _ = _corners(a, b, cs)
    inside = [ctx.contains(A, 1e-12), ctx.contains(B, 1e-12)]
    if inside.count(False) != 1:
        raise GadgetError("outside-corner rule is ambiguous")
    return _inset_corner(a, b, cs, "b" if inside[0] else "a", eps)


def _same_cone(a, b, ctx, cs, eps):
    # the corner of T(a, b) lying in the parent's cone at the parent's apex
    A, B, _ = _corners(a, b, cs)
    apex = _vec(ctx.apex)
    hit = [cone_of(apex, A, cs) == ctx.cone, cone_of(apex, B, cs) == ctx.cone]
    if hit.count(True) != 1:
        raise GadgetError("same-cone rule is ambiguous")
    return _inset_corner(a, b, cs, "a" if hit[0] else "b", eps)


def _rhombus_outer(a, b, ctx, cs, eps):
    # where a boundary of T(a, b) meets the opposite boundary of T(b, a),
    # pulled towards the middle of ab; the one farther from the parent apex
    h = cs.theta / 2
    ia, ib = cone_of(a, b, cs), cone_of(b, a, cs)
    mid, d = (a + b) / 2, _norm(b - a)
    cands = []
    for side in (1, -1):
        x = _intersect(a, _ray(ia * cs.theta + side * h), b, _ray(ib * cs.theta - side * h))
        cands.append(x + eps * d * _unit(mid - x))
    apex = _vec(ctx.apex)
    return max(cands, key=lambda p: _norm(p - apex))


def _ray_3_4(a, b, ctx, cs, eps):
    # on the boundary of T(a, b) nearer to b, at sin(3θ/4)/sin(θ)·|ab| from a
    th = cs.theta
    i, d = cone_of(a, b, cs), _norm(b - a)
    r = max((_ray(i * th + s * th / 2) for s in (1, -1)), key=lambda r: np.dot(r, b - a))
    p = a + r * math.sin(3 * th / 4) / math.sin(th) * d
    return p + eps * d * _unit((a + b) / 2 - p)


LEVELS: dict[str, list[tuple[Rule | None, Rule | None]]] = {
    "4k+2": [(_far, _far)],
    "4k+3": [(_far, _far), (_outside, _same_cone), (_ray_3_4, _ray_3_4)],
    "4k+4": [(_far, _far), (_same_cone, _same_cone), (_rhombus_outer, None)],
    "4k+5": [(_far, _far), (_outside, _same_cone)],
}
# labels along the intended shortest path between u and w ("f" = forward
# placement, "r" = reverse placement, concatenated per level)
INTENDED = {
    "4k+2": ("f",),
    "4k+3": ("f", "ff", "fff"),
    "4k+4": ("f", "ff", "fff"),
    "4k+5": ("fr",),
}


def _extend(a, b, levels, ctx, cs, eps, out, scale=1.0, tag=""):
    if not levels:
        return
    (fwd, rev), rest = levels[0], levels[1:]
    if fwd is not None:
        p = fwd(a, b, ctx, cs, eps * scale)
        out.append((tag + "f", p))
        _extend(p, b, rest, canonical_triangle(a, b, cs), cs, eps, out, scale * 1.13, tag + "f")
    if rev is not None:
        q = rev(b, a, ctx, cs, eps * scale * 1.07)
        out.append((tag + "r", q))
        _extend(q, a, rest, canonical_triangle(b, a, cs), cs, eps, out, scale * 1.19, tag + "r")


def _span_gadget(family: str, k: int, epsilon: float, strict: bool = True) -> GadgetOutput:
    k = _check_k(k)
    eps = _check_eps(epsilon)
    spec = GadgetSpec(family, k, eps, "spanning")
    cs = ConeSystem(spec.m)
    h = cs.theta / 2
    # odd families use alpha just below θ/4: exactly θ/4 puts uw perpendicular
    # to a bisector of the opposite cone
    alpha = (h if family in ("4k+2", "4k+4") else h / 2) - eps
    u, w = np.zeros(2), np.array([math.sin(alpha), math.cos(alpha)])
    placed: list[tuple[str, np.ndarray]] = []
    _extend(u, w, LEVELS[family], None, cs, eps, placed)
    labels = ["u", "w"] + [t for t, _ in placed]
    points = np.array([u, w] + [p for _, p in placed])
    path = (0,) + tuple(labels.index(t) for t in INTENDED[family]) + (1,)
    out = GadgetOutput(spec, points, bounds.lb_span(spec.m), path, labels)
    _self_check_spanning(out, cs, strict)
    return out


def _self_check_spanning(out: GadgetOutput, cs: ConeSystem, strict: bool) -> None:
    try:
        g = build_theta_graph(out.points, cs)
    except GeneralPositionError as exc:
        raise GadgetError(f"gadget is not in general position: {exc.report.kinds()}") from exc
    edges = set(g.undirected_edges())
    path = out.intended_path
    for a, b in zip(path, path[1:]):
        if (min(a, b), max(a, b)) not in edges:
            raise GadgetError(f"intended edge {out.labels[a]}-{out.labels[b]} missing")
    intended = math.fsum(g.length(a, b) for a, b in zip(path, path[1:]))
    delta = shortest_path(g, out.source, out.dest).length
    # mirrored copies of the intended path differ from it by under epsilon
    if delta < intended - 2 * out.spec.epsilon:
        out.shortcut_gap = intended - delta
        if not strict:
            return
        raise GadgetError(f"shortcut: shortest path {delta:.9f} < intended {intended:.9f}")


def gen_span_4k2(k: int, epsilon: float = 1e-5, strict: bool = True) -> GadgetOutput:
    """Vertices v, v' near the far corners of T(u, w) and T(w, u); α = θ/2 − ε."""
    return _span_gadget("4k+2", k, epsilon, strict)


def gen_span_4k3(k: int, epsilon: float = 1e-4, strict: bool = True) -> GadgetOutput:
    """Intended path u, v1, v2, v3, w with α just below θ/4.

    For k >= 2 a mirrored path u, v', v'', w stays shorter by less than 1e-3
    (independent of epsilon); strict mode raises GadgetError, ``strict=False``
    returns the point set with the gap in ``shortcut_gap``.
    """
    return _span_gadget("4k+3", k, epsilon, strict)


def gen_span_4k4(k: int, epsilon: float = 1e-4, strict: bool = True) -> GadgetOutput:
    """Intended path u, v1, v2, v3, w; v3 where the boundaries of T(v2, w) and T(w, v2) cross."""
    return _span_gadget("4k+4", k, epsilon, strict)


def gen_span_4k5(k: int, epsilon: float = 1e-4, strict: bool = True) -> GadgetOutput:
    """Intended path u, v2', w with α just below θ/4."""
    return _span_gadget("4k+5", k, epsilon, strict)


SPAN_GENERATORS = {"4k+2": gen_span_4k2, "4k+3": gen_span_4k3,
                   "4k+4": gen_span_4k4, "4k+5": gen_span_4k5}


# ---------------------------------------------------------------------------
# routing gadgets


def route_series(m: int, cycles: int) -> float:
    """Length of the ideal spiral route with ``cycles`` spiral vertices (|uw| = 1).

    4k+4: each step shrinks the distance to w by tan(θ/2); every hop but the
    last is the hypotenuse of its canonical triangle.  θ10: the hop lengths are
    the powers of 2 sin(θ/2).
    """
    fc = bounds.classify(m)
    h = math.pi / m
    if fc.offset == 4:
        r = [2 * math.sin(h) * math.tan(h) ** j for j in range(cycles)]
        return 1 + math.fsum(x / math.cos(h) for x in r[:-1]) + r[-1]
    if m != 10:
        raise DomainError("the spiral routing gadget exists for 4k+4 and m = 10 only")
    q = 2 * math.sin(h)
    return math.fsum(q ** i for i in range(cycles + 1))


def _jitter(j: int) -> float:
    # aperiodic, so the self-similar spiral never repeats an offset exactly
    return 1 + 0.3 * ((j * GOLDEN) % 1.0)


def _boundary_rays(cs, i):
    h = cs.theta / 2
    return _ray(i * cs.theta - h), _ray(i * cs.theta + h)


def _ray_towards(cs, i, origin, target):
    """The boundary ray of cone ``i`` at ``origin`` nearer to ``target``."""
    left, right = _boundary_rays(cs, i)
    v = target - origin
    return left if abs(_cross(left, v)) < abs(_cross(right, v)) else right


def _outer_normal(d, inner, origin):
    n = np.array([d[1], -d[0]])
    return n if np.dot(n, inner - origin) < 0 else -n


def _spiral(m: int, cycles: int, eps: float):
    cs = ConeSystem(m)
    h = cs.theta / 2
    if m % 4 == 0:
        per_turn, which, guess = 4, "a", 0.5
        r_last = 2 * math.sin(h) * math.tan(h) ** (cycles - 1)
        base = 10 * eps * r_last
    else:
        per_turn, which, guess = 5, "far", 0.01
        r_last = (2 * math.sin(h)) ** cycles
        base = 0.05 * eps * r_last

    def margin(j):
        # how far outside w the boundary ray of x_j passes; increasing in j
        # so that no x_j sees a later auxiliary vertex before w
        return base * (1 + j / (cycles + 1))

    off = math.asin(margin(0))
    u = np.zeros(2)
    w = np.array([math.sin(h - off), math.cos(h - off)])
    ps = [u]
    for j in range(cycles):
        ps.append(_inset_corner(ps[-1], w, cs, which, eps * _jitter(j)))
    xs = []
    for j in range(1, cycles - per_turn + 1):
        pj, pn = ps[j], ps[j + 1]
        # the cone of x_j holding both w and p_{j+1}
        g = pj + guess * (pn - pj)
        aw, an = direction_angle(*(w - g)), direction_angle(*(pn - g))
        turn = (an - aw + math.pi) % (2 * math.pi) - math.pi
        i = int(cone_index_of_angle((aw + turn / 2) % (2 * math.pi), cs))
        dw = _ray_towards(cs, i, g, w)
        nw = _outer_normal(dw, pn, w)
        ip = cone_of(pj, w, cs)
        dq = _ray_towards(cs, ip, pj, pn)
        nq = _outer_normal(dq, w, pj)
        slack = -np.dot(pn - pj, nq)
        # line 1: parallel to dw, passing margin(j) outside w
        # line 2: parallel to p_j's boundary near p_{j+1}, half its slack inside
        A = np.array([nw, nq])
        rhs = np.array([margin(j) + np.dot(w, nw), -slack / 2 + np.dot(pj, nq)])
        xs.append((j, np.linalg.solve(A, rhs)))
    labels = (["u", "w"] + [f"p{j}" for j in range(1, cycles + 1)]
              + [f"x{j}" for j, _ in xs])
    points = np.array([u, w] + ps[1:] + [x for _, x in xs])
    index = {t: n for n, t in enumerate(labels)}
    path = [0]
    for j in range(1, cycles + 1):
        path.append(index[f"p{j}"])
        if f"x{j}" in index:
            path.append(index[f"x{j}"])
    path.append(1)
    return points, labels, tuple(path)


def _route_gadget(family: str, k: int, cycles: int, epsilon: float) -> GadgetOutput:
    if int(cycles) != cycles or cycles < 1:
        raise DomainError(f"cycles must be an integer >= 1, got {cycles!r}")
    eps = _check_eps(epsilon)
    spec = GadgetSpec(family, k, eps, "routing", int(cycles))
    try:
        with np.errstate(all="raise"):
            points, labels, path = _spiral(spec.m, spec.cycles, eps)
    except (ThetaSpanError, ArithmeticError, np.linalg.LinAlgError) as exc:
        raise GadgetError(f"spiral with {cycles} cycles degenerates in double precision; "
                          "use fewer cycles") from exc
    out = GadgetOutput(spec, points, route_series(spec.m, spec.cycles), path, labels)
    try:
        g = build_theta_graph(points, spec.m)
    except GeneralPositionError as exc:
        raise GadgetError(f"spiral with {cycles} cycles is not in general position "
                          f"({sorted(exc.report.kinds())}); use fewer cycles") from exc
    route = theta_route(g, out.source, out.dest)
    if route.vertices != path:
        raise GadgetError("theta-routing skips part of the spiral: "
                          + ",".join(labels[v] for v in route.vertices))
    return out


def gen_route_4k4(k: int, cycles: int, epsilon: float = 1e-4) -> GadgetOutput:
    """Spiral forcing theta-routing on the θ(4k+4)-graph to circle w ``cycles`` times."""
    return _route_gadget("4k+4", _check_k(k), cycles, epsilon)


def gen_route_theta10(cycles: int, epsilon: float = 1e-4) -> GadgetOutput:
    """The analogous spiral on the θ10-graph."""
    return _route_gadget("4k+2", 2, cycles, epsilon)


def measured_ratio(out: GadgetOutput, g: ThetaGraph | None = None) -> float:
    """δ(u, w)/|uw| for spanning gadgets, routed length/|uw| for routing gadgets."""
    g = g or out.graph()
    uw = g.length(out.source, out.dest)
    if out.spec.kind == "routing":
        return theta_route(g, out.source, out.dest).length / uw
    return shortest_path(g, out.source, out.dest).length / uw


def generate(family: str, k: int | None = None, epsilon: float | None = None,
             cycles: int | None = None) -> GadgetOutput:
    """Dispatch on family name; ``cycles`` selects the routing gadget.

    For routing, ``family`` is ``"4k+4"`` or ``"theta10"``.
    """
    kw = {} if epsilon is None else {"epsilon": epsilon}
    if cycles is not None:
        if family == "4k+4":
            return gen_route_4k4(1 if k is None else k, cycles, **kw)
        if family in ("theta10", "4k+2") and k in (None, 2):
            return gen_route_theta10(cycles, **kw)
        raise DomainError(f"no routing gadget for family {family!r} with k={k}")
    if family not in SPAN_GENERATORS:
        raise DomainError(f"unknown family {family!r}; expected one of {sorted(SPAN_GENERATORS)}")
    return SPAN_GENERATORS[family](1 if k is None else k, **kw)


__all__ = [
    "GadgetSpec", "GadgetOutput", "gen_span_4k2", "gen_span_4k3", "gen_span_4k4",
    "gen_span_4k5", "gen_route_4k4", "gen_route_theta10", "route_series",
    "measured_ratio", "generate", "SPAN_GENERATORS",
]
