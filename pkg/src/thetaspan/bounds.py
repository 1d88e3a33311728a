"""Closed-form spanning and routing bounds for the four theta-graph families.

A family is ``m = 4k + offset`` with ``offset in {2, 3, 4, 5}`` and ``k >= 1``.
Formula helpers take a ``lib`` namespace (``math`` or ``mpmath``) so the
partial-order verifier can re-evaluate tight margins in extended precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .errors import FamilyError

FAMILIES = ("4k+2", "4k+3", "4k+4", "4k+5")


@dataclass(frozen=True)
class FamilyClass:
    m: int
    family: str
    k: int
    theta: float

    @property
    def offset(self) -> int:
        return int(self.family[-1])


def classify(m: int) -> FamilyClass:
    if int(m) != m or m < 6:
        raise FamilyError(f"m={m}: only theta-graphs with at least 6 cones are covered")
    m = int(m)
    offset = (m - 2) % 4 + 2
    k = (m - offset) // 4
    return FamilyClass(m, f"4k+{offset}", k, 2.0 * math.pi / m)


# ---------------------------------------------------------------------------
# formulas in terms of the half aperture h = theta/2 = pi/m


def _half(m, lib):
    return lib.pi / m


def _c35(h, lib):
    # cos(theta/4) / (cos(theta/2) - sin(3 theta/4))
    return lib.cos(h / 2) / (lib.cos(h) - lib.sin(3 * h / 2))


def _c44(h, lib):
    return 1 / (lib.cos(h) - lib.sin(h))


def ub_span_value(m: int, lib=math):
    fc = classify(m)
    h = _half(m, lib)
    if fc.offset == 2:
        return 1 + 2 * lib.sin(h)
    if fc.offset == 4:
        return 1 + 2 * lib.sin(h) / (lib.cos(h) - lib.sin(h))
    return _c35(h, lib)


def lb_span_value(m: int, lib=math):
    fc = classify(m)
    h = _half(m, lib)
    if fc.offset == 2:
        return 1 + 2 * lib.sin(h)
    if fc.offset == 3:
        t = 2 * h
        num = (3 * lib.cos(t / 4) + lib.cos(3 * t / 4) + lib.sin(t / 2)
               + lib.sin(t) + lib.sin(3 * t / 2))
        return num / (3 * lib.cos(t / 2) + lib.cos(3 * t / 2))
    if fc.offset == 4:
        return 1 + 2 * lib.tan(h) + 2 * lib.tan(h) ** 2
    s = 1 / lib.cos(h)
    root = lib.sqrt(4 * s + 7 * s ** 2 + 4 * s ** 3 + s ** 4 - 8 * lib.cos(h) - 4)
    return root / 2 + lib.tan(h) + s * lib.tan(h) / 2


def rs_value(m: int, lib=math):
    """The older ``1/(1 - 2 sin(theta/2))`` bound; infinite for m <= 6."""
    h = _half(m, lib)
    den = 1 - 2 * lib.sin(h)
    if m <= 6 or den <= 0:
        return math.inf
    return 1 / den


def ub_route_value(m: int, lib=math, legacy_table: bool = False):
    fc = classify(m)
    h = _half(m, lib)
    if fc.offset == 2:
        return rs_value(m, lib)
    if fc.offset == 4:
        return 1 + 2 * lib.sin(h) / (lib.cos(h) - lib.sin(h))
    if legacy_table:
        # summary-table variant with cos(theta/2) - sin(theta/2) in the denominator
        return 1 + 2 * lib.sin(h) * lib.cos(h / 2) / (lib.cos(h) - lib.sin(h))
    return 1 + 2 * lib.sin(h) * _c35(h, lib)


def ub_span(m: int) -> float:
    return float(ub_span_value(m))


def lb_span(m: int) -> float:
    return float(lb_span_value(m))


def ub_route(m: int, legacy_table: bool = False) -> float:
    return float(ub_route_value(m, legacy_table=legacy_table))


def legacy_rs(m: int) -> float:
    classify(m)
    return float(rs_value(m))


def family_constant(m: int) -> float:
    """The constant weighting the far side of the canonical triangle (4k+3/4/5)."""
    fc = classify(m)
    h = math.pi / m
    if fc.offset == 2:
        raise FamilyError("the 4k+2 bound has no separate constant")
    return _c44(h, math) if fc.offset == 4 else _c35(h, math)


def path_length_bound(m: int, alpha):
    """Upper bound on ``delta(u, w) / |uw|`` given the angle ``alpha`` of T(u, w).

    Accepts scalars or numpy arrays for ``alpha``.
    """
    import numpy as np

    fc = classify(m)
    h = math.pi / m
    ca, sa = np.cos(alpha), np.sin(alpha)
    if fc.offset == 2:
        return (1 + math.sin(h)) / math.cos(h) * ca + sa
    c = family_constant(m)
    return ca / math.cos(h) + c * (ca * math.tan(h) + sa)


def pair_bound(m: int, alpha_uw, alpha_wu):
    """Per-pair stretch bound: one orientation for even families, the min of
    both orientations for 4k+3 and 4k+5."""
    import numpy as np

    fc = classify(m)
    b = path_length_bound(m, alpha_uw)
    if fc.offset in (3, 5):
        b = np.minimum(b, path_length_bound(m, alpha_wu))
    return b


@dataclass(frozen=True)
class BoundsRecord:
    fc: FamilyClass
    ub_span: float
    lb_span: float
    ub_route: float
    legacy_rs: float

    def row(self) -> dict:
        return {
            "m": self.fc.m,
            "family": self.fc.family,
            "k": self.fc.k,
            "theta": self.fc.theta,
            "ub_span": self.ub_span,
            "lb_span": self.lb_span,
            "ub_route": self.ub_route,
            "legacy_rs": self.legacy_rs,
        }


def bounds_record(m: int, legacy_table: bool = False) -> BoundsRecord:
    fc = classify(m)
    return BoundsRecord(fc, ub_span(m), lb_span(m), ub_route(m, legacy_table), legacy_rs(m))


# ---------------------------------------------------------------------------
# partial order between the families

# (label, m on the upper-bound side, m on the lower-bound side, first k);
# each row asserts ub(upper_m(k)) < lb(lower_m(k))
INEQUALITIES = (
    ("a", lambda k: 4 * (k + 1) + 2, lambda k: 4 * k + 2, 1),
    ("b", lambda k: 4 * (k + 1) + 3, lambda k: 4 * k + 3, 1),
    ("c", lambda k: 4 * (k + 1) + 4, lambda k: 4 * k + 4, 1),
    ("d", lambda k: 4 * (k + 1) + 5, lambda k: 4 * k + 5, 1),
    ("e", lambda k: 4 * k + 2, lambda k: 4 * k + 4, 1),
    ("f", lambda k: 4 * (k + 1) + 4, lambda k: 4 * k + 2, 1),
    ("g", lambda k: 4 * (k + 1) + 5, lambda k: 4 * k + 3, 1),
    ("h", lambda k: 4 * (k + 1) + 3, lambda k: 4 * k + 5, 1),
    ("i", lambda k: 4 * k + 5, lambda k: 4 * k + 2, 2),
)


@dataclass
class InequalityResult:
    label: str
    k_min: int
    k_max: int
    violations: list[tuple[int, float]] = field(default_factory=list)
    min_margin: float = math.inf
    argmin_k: int = 0
    rechecked: int = 0

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass
class PartialOrderReport:
    results: list[InequalityResult]

    @property
    def n_holding(self) -> int:
        return sum(r.holds for r in self.results)

    @property
    def ok(self) -> bool:
        return self.n_holding == len(self.results)

    def summary(self) -> str:
        return f"{self.n_holding}/{len(self.results)} inequality families hold"


def verify_partial_order(k_max: int, precision_threshold: float = 1e-9,
                         dps: int = 50) -> PartialOrderReport:
    """Check ``ub(upper_m(k)) < lb(lower_m(k))`` for all nine inequalities, k up to ``k_max``.

    Margins below ``precision_threshold`` are re-evaluated with mpmath at
    ``dps`` decimal digits before a violation is declared.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    results = []
    for label, upper_m, lower_m, k0 in INEQUALITIES:
        res = InequalityResult(label, k0, k_max)
        for k in range(k0, k_max + 1):
            margin = lb_span_value(lower_m(k)) - ub_span_value(upper_m(k))
            if margin < precision_threshold:
                res.rechecked += 1
                with mpmath.workdps(dps):
                    margin = float(lb_span_value(lower_m(k), mpmath)
                                   - ub_span_value(upper_m(k), mpmath))
            if margin < res.min_margin:
                res.min_margin, res.argmin_k = margin, k
            if not margin > 0:
                res.violations.append((k, margin))
        results.append(res)
    return PartialOrderReport(results)


# ---------------------------------------------------------------------------
# elementary trig inequalities on [0, pi/4]

TRIG_INEQUALITIES = (
    ("sin x <= x", lambda x: x - math.sin(x)),
    ("cos x >= 1 - x^2/2", lambda x: math.cos(x) - (1 - x * x / 2)),
    ("sin x >= x - x^3/6", lambda x: math.sin(x) - (x - x ** 3 / 6)),
    ("cos x <= 1 - x^2/2 + x^4/24", lambda x: (1 - x * x / 2 + x ** 4 / 24) - math.cos(x)),
    ("tan x >= x", lambda x: math.tan(x) - x),
    ("tan^2 x >= x^2", lambda x: math.tan(x) ** 2 - x * x),
)


@dataclass
class TrigReport:
    samples: int
    violations: list[tuple[str, float, float]]
    equalities: list[tuple[str, float]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_trig_inequalities(samples: int) -> TrigReport:
    """Grid sweep over ``[0, pi/4]`` (endpoints included).

    Each slack must be >= 0 everywhere and > 0 away from ``x = 0``.  Slacks
    are evaluated with mpmath when the double result is not positive, since
    near zero the true slack (order x^5 for the quartic cosine bound) is below
    double rounding.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    xs = [0.0, math.pi / 4] + [math.pi / 4 * i / (samples + 1) for i in range(1, samples + 1)]
    violations, equalities = [], []
    for name, slack in TRIG_INEQUALITIES:
        for x in xs:
            s = slack(x)
            if s <= 0.0 and x != 0.0:
                with mpmath.workdps(60):
                    s = float(_trig_slack_mp(name, mpmath.mpf(x)))
            if x == 0.0:
                if s != 0.0:
                    violations.append((name, x, s))
                equalities.append((name, x))
            elif not s > 0.0:
                violations.append((name, x, s))
    return TrigReport(len(xs), violations, equalities)


def _trig_slack_mp(name: str, x):
    mp = mpmath
    return {
        "sin x <= x": lambda: x - mp.sin(x),
        "cos x >= 1 - x^2/2": lambda: mp.cos(x) - (1 - x * x / 2),
        "sin x >= x - x^3/6": lambda: mp.sin(x) - (x - x ** 3 / 6),
        "cos x <= 1 - x^2/2 + x^4/24": lambda: (1 - x * x / 2 + x ** 4 / 24) - mp.cos(x),
        "tan x >= x": lambda: mp.tan(x) - x,
        "tan^2 x >= x^2": lambda: mp.tan(x) ** 2 - x * x,
    }[name]()
