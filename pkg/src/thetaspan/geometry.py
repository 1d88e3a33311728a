"""Cone arithmetic, canonical triangles and the small geometric oracles.

Angles are measured clockwise from the positive y axis, so cone 0 of a
vertex is bisected by the vertical ray above it and cone numbers grow
clockwise.  Cone ``i`` covers the half-open interval
``[i*theta - theta/2, i*theta + theta/2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegenerateInputError, DomainError, HypothesisViolation

TWO_PI = 2.0 * math.pi
DEFAULT_TAU = 1e-12


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInputError(f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __sub__(self, other: "Point") -> tuple[float, float]:
        return (self.x - other.x, self.y - other.y)


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x, y = p
    return Point(float(x), float(y))


@dataclass(frozen=True, slots=True)
class ConeSystem:
    m: int
    theta: float = field(init=False)

    def __post_init__(self) -> None:
        if int(self.m) != self.m or self.m < 3:
            raise DomainError(f"cone count must be an integer >= 3, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "theta", TWO_PI / self.m)

    def bisector(self, i: int) -> tuple[float, float]:
        a = i * self.theta
        return (math.sin(a), math.cos(a))

    def right_normal(self, i: int) -> tuple[float, float]:
        """Unit vector perpendicular to bisector ``i``, pointing clockwise."""
        a = i * self.theta
        return (math.cos(a), -math.sin(a))


@dataclass(frozen=True, slots=True)
class CanonicalTriangle:
    apex: Point
    target: Point
    corner_a: Point  # upper-left, counterclockwise boundary
    corner_b: Point  # upper-right, clockwise boundary
    midpoint: Point
    alpha: float
    cone: int

    @property
    def height(self) -> float:
        return math.hypot(self.midpoint.x - self.apex.x, self.midpoint.y - self.apex.y)

    @property
    def area(self) -> float:
        half = math.hypot(self.corner_b.x - self.midpoint.x, self.corner_b.y - self.midpoint.y)
        return self.height * half

    def contains(self, p, tol: float = 0.0) -> bool:
        """Closed containment test (cone of the apex, below the far side)."""
        p = as_point(p)
        dx, dy = p.x - self.apex.x, p.y - self.apex.y
        bx, by = (self.midpoint.x - self.apex.x), (self.midpoint.y - self.apex.y)
        h = self.height
        if h == 0.0:
            return False
        bx, by = bx / h, by / h
        along = dx * bx + dy * by
        across = dx * by - dy * bx
        slope = math.hypot(self.corner_b.x - self.midpoint.x, self.corner_b.y - self.midpoint.y) / h
        return -tol <= along <= h + tol and abs(across) <= along * slope + tol


def direction_angle(dx, dy):
    """Clockwise angle from +y in [0, 2*pi); works on scalars and arrays."""
    if isinstance(dx, np.ndarray) or isinstance(dy, np.ndarray):
        return np.mod(np.arctan2(dx, dy), TWO_PI)
    return math.atan2(dx, dy) % TWO_PI


def cone_index_of_angle(phi, cs: ConeSystem):
    if isinstance(phi, np.ndarray):
        return np.mod(np.floor((phi + cs.theta / 2.0) / cs.theta).astype(np.int64), cs.m)
    return int(math.floor((phi + cs.theta / 2.0) / cs.theta)) % cs.m


def _delta(u, v) -> tuple[float, float]:
    u, v = as_point(u), as_point(v)
    dx, dy = v.x - u.x, v.y - u.y
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInputError(f"coincident points {u} and {v}")
    return dx, dy


def cone_of(u, v, cs: ConeSystem) -> int:
    """Index of the cone of ``u`` that contains ``v``."""
    dx, dy = _delta(u, v)
    return cone_index_of_angle(direction_angle(dx, dy), cs)


def projection_distance(u, v, cs: ConeSystem) -> float:
    """Distance from ``u`` to the projection of ``v`` on the bisector of its cone."""
    dx, dy = _delta(u, v)
    i = cone_index_of_angle(direction_angle(dx, dy), cs)
    bx, by = cs.bisector(i)
    return dx * bx + dy * by


def canonical_triangle(u, w, cs: ConeSystem) -> CanonicalTriangle:
    u, w = as_point(u), as_point(w)
    dx, dy = _delta(u, w)
    i = cone_index_of_angle(direction_angle(dx, dy), cs)
    bx, by = cs.bisector(i)
    rx, ry = cs.right_normal(i)
    h = dx * bx + dy * by
    lateral = dx * rx + dy * ry
    half = h * math.tan(cs.theta / 2.0)
    mx, my = u.x + h * bx, u.y + h * by
    alpha = math.atan2(abs(lateral), h)
    return CanonicalTriangle(
        apex=u,
        target=w,
        corner_a=Point(mx - half * rx, my - half * ry),
        corner_b=Point(mx + half * rx, my + half * ry),
        midpoint=Point(mx, my),
        alpha=alpha,
        cone=i,
    )


def lateral_offset(u, w, cs: ConeSystem) -> float:
    """Signed offset of ``w`` from the bisector of its cone at ``u`` (positive = clockwise side)."""
    dx, dy = _delta(u, w)
    i = cone_index_of_angle(direction_angle(dx, dy), cs)
    rx, ry = cs.right_normal(i)
    return dx * rx + dy * ry


def rotate(p, angle: float, center=(0.0, 0.0)) -> Point:
    """Rotate counterclockwise by ``angle`` radians (negative is clockwise)."""
    p, c = as_point(p), as_point(center)
    ca, sa = math.cos(angle), math.sin(angle)
    dx, dy = p.x - c.x, p.y - c.y
    return Point(c.x + ca * dx - sa * dy, c.y + sa * dx + ca * dy)


# ---------------------------------------------------------------------------
# general position


@dataclass(frozen=True)
class Violation:
    kind: str  # "ray-parallel" | "bisector-perpendicular" | "collinear"
    vertices: tuple[int, ...]
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _mod_pi_distance(a, b):
    return np.abs(np.mod(a - b + math.pi / 2.0, math.pi) - math.pi / 2.0)


def validate_general_position(
    points: Sequence, cs: ConeSystem, tau: float = DEFAULT_TAU
) -> ValidationReport:
    """Report every pair on a cone-ray-parallel line or on a line perpendicular
    to a bisector, and every collinear triple, all within angular tolerance ``tau``.
    """
    if not tau > 0:
        raise DomainError("tau must be positive")
    P = np.asarray([tuple(as_point(p)) for p in points], dtype=float).reshape(-1, 2)
    n = len(P)
    violations: list[Violation] = []
    if n < 2:
        return ValidationReport(violations)

    iu, ju = np.triu_indices(n, 1)
    d = P[ju] - P[iu]
    coincident = (d[:, 0] == 0.0) & (d[:, 1] == 0.0)
    for k in np.flatnonzero(coincident):
        violations.append(Violation("coincident", (int(iu[k]), int(ju[k]))))
    line = np.mod(np.arctan2(d[:, 0], d[:, 1]), math.pi)

    k = np.arange(cs.m)
    rays = np.mod(k * cs.theta + cs.theta / 2.0, math.pi)
    perps = np.mod(k * cs.theta + math.pi / 2.0, math.pi)
    for kind, dirs in (("ray-parallel", rays), ("bisector-perpendicular", perps)):
        dist = _mod_pi_distance(line[:, None], dirs[None, :])
        hit = np.flatnonzero((dist <= tau).any(axis=1) & ~coincident)
        for h in hit:
            violations.append(Violation(kind, (int(iu[h]), int(ju[h])),
                                        f"line angle {line[h]:.17g}"))

    # collinear triples: equal directions mod pi seen from a common vertex
    triples: set[tuple[int, int, int]] = set()
    for i in range(n):
        others = np.delete(np.arange(n), i)
        dv = P[others] - P[i]
        keep = ~((dv[:, 0] == 0.0) & (dv[:, 1] == 0.0))
        others, dv = others[keep], dv[keep]
        if len(others) < 2:
            continue
        ang = np.mod(np.arctan2(dv[:, 0], dv[:, 1]), math.pi)
        order = np.argsort(ang, kind="stable")
        sa = ang[order]
        gaps = np.diff(np.concatenate([sa, [sa[0] + math.pi]]))
        for g in np.flatnonzero(gaps <= tau):
            a, b = int(others[order[g]]), int(others[order[(g + 1) % len(order)]])
            triples.add(tuple(sorted((i, a, b))))
    for t in sorted(triples):
        violations.append(Violation("collinear", t))
    return ValidationReport(violations)


# ---------------------------------------------------------------------------
# lemma oracles


def boundary_parallel_check(cs: ConeSystem, tol: float = 1e-9) -> bool:
    """True when every line perpendicular to a bisector is parallel to a cone boundary."""
    q = (math.pi / 2.0 - cs.theta / 2.0) / cs.theta
    return abs(q - round(q)) <= tol


def _angle_at(p, q, r) -> float:
    """Unsigned angle at ``q`` between ``qp`` and ``qr``."""
    ax, ay = p.x - q.x, p.y - q.y
    bx, by = r.x - q.x, r.y - q.y
    return math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by)


def _dist(p, q) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def _circumcircle(a, b, c) -> tuple[float, float, float]:
    d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y))
    if d == 0.0:
        raise HypothesisViolation("points are collinear, no circumcircle")
    a2, b2, c2 = a.x ** 2 + a.y ** 2, b.x ** 2 + b.y ** 2, c.x ** 2 + c.y ** 2
    ox = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d
    oy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d
    return ox, oy, math.hypot(a.x - ox, a.y - oy)


def four_points_inequality(a, b, c, d, tol: float = 1e-9) -> bool:
    """Check ``|ac| + |cd| <= |ab| + |bd|`` and ``|cd| <= |bd|``.

    Hypothesis: the four points are concyclic, ``b`` and ``c`` lie on the same
    arc cut off by the chord ``ad`` and ``angle(cad) <= angle(bad) <= angle(adc)``.
    Raises HypothesisViolation otherwise.
    """
    a, b, c, d = (as_point(p) for p in (a, b, c, d))
    if _dist(a, d) == 0.0:
        raise HypothesisViolation("a and d coincide")
    ox, oy, r = _circumcircle(a, b, d)
    if abs(math.hypot(c.x - ox, c.y - oy) - r) > tol * max(r, 1.0):
        raise HypothesisViolation("points are not concyclic")
    side_b = (d.x - a.x) * (b.y - a.y) - (d.y - a.y) * (b.x - a.x)
    side_c = (d.x - a.x) * (c.y - a.y) - (d.y - a.y) * (c.x - a.x)
    if side_b * side_c < 0.0:
        raise HypothesisViolation("b and c lie on opposite arcs of chord ad")
    cad, bad, adc = _angle_at(c, a, d), _angle_at(b, a, d), _angle_at(a, d, c)
    if not (cad <= bad + tol and bad <= adc + tol):
        raise HypothesisViolation(
            f"angle ordering fails: cad={cad:.6g}, bad={bad:.6g}, adc={adc:.6g}")
    scale = tol * max(_dist(a, d), 1.0)
    first = _dist(a, c) + _dist(c, d) <= _dist(a, b) + _dist(b, d) + scale
    second = _dist(c, d) <= _dist(b, d) + scale
    return first and second


def calculation_constant(theta: float, beta: float, gamma: float) -> float:
    """Smallest constant ``c`` for which the two-corner path comparison holds.

    ``beta`` in ``(0, (pi - theta)/2)``, ``gamma`` in ``[0, theta/2]`` and
    ``theta <= 2*pi/7``.  The closed end at ``theta/2`` admits the limiting
    configurations used to derive the family constants.
    """
    eps = 1e-15
    if not (0.0 < theta <= TWO_PI / 7.0 + eps):
        raise DomainError(f"theta={theta} outside (0, 2*pi/7]")
    if not (0.0 < beta < (math.pi - theta) / 2.0):
        raise DomainError(f"beta={beta} outside (0, (pi - theta)/2)")
    if not (0.0 <= gamma <= theta / 2.0 + eps):
        raise DomainError(f"gamma={gamma} outside [0, theta/2]")
    num = math.cos(gamma) - math.sin(beta)
    den = math.cos(theta / 2.0 - beta) - math.sin(theta / 2.0 + gamma)
    return num / den


def points_array(points: Iterable) -> np.ndarray:
    P = np.asarray([tuple(as_point(p)) for p in points], dtype=float)
    return P.reshape(-1, 2)
