import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetaspan import bounds
from thetaspan.errors import FamilyError


def test_classify():
    assert (bounds.classify(6).family, bounds.classify(6).k) == ("4k+2", 1)
    assert (bounds.classify(7).family, bounds.classify(7).k) == ("4k+3", 1)
    assert (bounds.classify(13).family, bounds.classify(13).k) == ("4k+5", 2)
    for m in (3, 4, 5):
        with pytest.raises(FamilyError):
            bounds.classify(m)


def test_headline_values():
    assert bounds.ub_span(7) == pytest.approx(3.5132, abs=5e-4)
    assert bounds.legacy_rs(7) == pytest.approx(7.5625, abs=5e-4)
    assert bounds.ub_span(6) == 2.0 and bounds.lb_span(6) == pytest.approx(2.0, abs=1e-12)
    assert bounds.ub_span(10) == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-14)
    assert bounds.lb_span(8) == pytest.approx(2.1716, abs=1e-4)
    assert bounds.lb_span(7) == pytest.approx(2.0158, abs=1e-4)
    assert bounds.ub_route(10) == pytest.approx(((1 + math.sqrt(5)) / 2) ** 2, rel=1e-13)
    assert bounds.ub_route(8) == pytest.approx(1 + math.sqrt(2), rel=1e-14)
    assert bounds.ub_route(6) == math.inf


def test_legacy_table_variant():
    h = math.pi / 7
    assert bounds.ub_route(7, legacy_table=True) == pytest.approx(
        1 + 2 * math.sin(h) * math.cos(h / 2) / (math.cos(h) - math.sin(h)))
    assert bounds.ub_route(8, legacy_table=True) == bounds.ub_route(8)


def test_mpmath_agrees():
    with mpmath.workdps(40):
        for m in range(6, 60):
            assert float(bounds.ub_span_value(m, mpmath)) == pytest.approx(bounds.ub_span(m),
                                                                            rel=1e-13)
            assert float(bounds.lb_span_value(m, mpmath)) == pytest.approx(bounds.lb_span(m),
                                                                            rel=1e-13)


def test_family_relations():
    for m in range(6, 1001):
        lb, ub = bounds.lb_span(m), bounds.ub_span(m)
        assert 1 <= lb <= ub + 1e-15
        if m % 4 == 2:
            assert lb == pytest.approx(ub, abs=1e-12)
        else:
            assert lb < ub
        if m > 6:
            assert bounds.ub_route(m) >= ub
    assert bounds.ub_span(1000) < 1.02
    for off in (2, 3, 4, 5):
        ubs = [bounds.ub_span(4 * k + off) for k in range(1, 200)]
        assert all(a > b for a, b in zip(ubs, ubs[1:]))
    for k in range(1, 101):
        assert bounds.lb_span(4 * k + 4) > bounds.ub_span(4 * k + 2)


@given(st.integers(6, 400), st.floats(0, 1))
def test_pair_bound_range(m, f):
    h = math.pi / m
    a = f * h
    b = float(bounds.path_length_bound(m, a))
    assert 1 <= b <= bounds.ub_span(m) * (1 + 1e-12) or bounds.classify(m).offset in (3, 5)
    both = float(bounds.pair_bound(m, a, h - a))
    assert both <= bounds.ub_span(m) * (1 + 1e-12)


def test_partial_order_examples():
    assert bounds.ub_span(10) < bounds.lb_span(6) == pytest.approx(2)
    assert bounds.ub_span(12) < bounds.lb_span(6)
    rep = bounds.verify_partial_order(50)
    assert rep.ok and rep.summary() == "9/9 inequality families hold"
    assert [r.k_min for r in rep.results] == [1] * 8 + [2]
    with pytest.raises(ValueError):
        bounds.verify_partial_order(1)


def test_trig_inequalities():
    rep = bounds.check_trig_inequalities(100)
    assert rep.ok and rep.samples == 102
    assert len(rep.equalities) == 6  # all six are equalities at x = 0
    with pytest.raises(ValueError):
        bounds.check_trig_inequalities(0)
