import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capillum import expr as ex
from capillum.errors import DomainViolation, TieUnresolved
from capillum.interval import to_fraction


def mp_fraction(x) -> Fraction:
    return to_fraction(mpmath.mpf(x)._mpf_)


def test_rational_constant_enclosure():
    for prec in (64, 256):
        lo, hi = ex.eval_interval(ex.const(Fraction(1, 3)), prec)
        assert lo <= Fraction(1, 3) <= hi
        assert hi - lo <= Fraction(1, 2**prec)


def test_pi_enclosure():
    lo, hi = ex.eval_interval(ex.PI, 64)
    assert hi - lo < Fraction(1, 2**60)
    with mpmath.workprec(400):
        ref = mp_fraction(mpmath.pi)
    slack = Fraction(1, 2**390)
    assert lo <= ref - slack and ref + slack <= hi
    assert float(lo) == pytest.approx(3.14159265358979)


def test_cos_19pi_over_180():
    e = ex.cos(ex.pi_times(Fraction(19, 180)))
    lo, hi = ex.eval_interval(e, 128)
    with mpmath.workprec(400):
        ref = mp_fraction(mpmath.cos(19 * mpmath.pi / 180))
    assert lo <= ref <= hi
    assert str(float(lo))[:9] == "0.9455185"
    assert hi - lo < Fraction(1, 2**100)


def test_round_up_examples():
    assert ex.round_up(ex.const(Fraction(1, 3)), 3000) == Fraction(1000, 3000)
    assert ex.round_up(ex.PI, 3000) == Fraction(9425, 3000)
    assert ex.round_up(1 - ex.cos(ex.pi_times(Fraction(1, 2))), 3000) == 1
    assert ex.round_down(ex.PI, 3000) == Fraction(9424, 3000)


def test_rational_cos_folds():
    assert ex.cos(ex.pi_times(Fraction(1, 3))) == ex.const(Fraction(1, 2))
    assert ex.cos(ex.pi_times(Fraction(7, 3))) == ex.const(Fraction(1, 2))
    assert ex.sin(ex.pi_times(Fraction(1, 2))) == ex.const(1)
    assert ex.sin(ex.pi_times(Fraction(-1, 2))) == ex.const(-1)
    assert ex.cos(ex.const(0)) == ex.const(1)
    assert ex.acos(ex.const(Fraction(-1, 2))) == ex.pi_times(Fraction(2, 3))
    assert ex.pi_times(Fraction(1, 2)) - ex.pi_times(Fraction(1, 2)) == ex.const(0)
    assert isinstance(ex.cos(ex.pi_times(Fraction(1, 5))), ex.Func)


def test_tie_detected():
    two = ex.sqrt(ex.const(2)) * ex.sqrt(ex.const(3))
    # sqrt(2)*sqrt(3) is irrational: resolves
    assert ex.round_up(two, 10) == Fraction(25, 10)
    exact_two = ex.sqrt(ex.const(2)) * ex.sqrt(ex.const(2))
    with pytest.raises(TieUnresolved):
        ex.round_up(exact_two, 1)


def test_domain_violation():
    with pytest.raises(DomainViolation):
        ex.acos(ex.const(2))
    with pytest.raises(DomainViolation):
        ex.eval_interval(ex.acos(ex.sqrt(ex.const(5))), 64)
    with pytest.raises(DomainViolation):
        ex.eval_interval(ex.sqrt(-ex.sqrt(ex.const(2))), 64)


def test_discretization_grid():
    g = ex.discretization_grid(1)
    assert g == [ex.pi_times(Fraction(19, 180)), ex.pi_times(Fraction(1, 2))]
    g = ex.discretization_grid(250)
    assert len(g) == 251
    assert g[1] - g[0] == ex.pi_times(Fraction(71, 45000))
    assert g[-1] == ex.pi_times(Fraction(1, 2))
    steps = {g[i + 1].coef - g[i].coef for i in range(250)}
    assert steps == {Fraction(71, 45000)}


def test_a0_below_always_lit_radius():
    a0 = ex.pi_times(Fraction(19, 180))
    bound = ex.pi_times(Fraction(1, 2)) - ex.acos(ex.const(Fraction(1, 3)))
    assert ex.compare(a0, bound) == -1
    lo, hi = ex.eval_interval(bound, 64)
    assert float(lo) == pytest.approx(0.33984, abs=1e-5)


# random expressions paired with an mpmath reference value

def random_expr(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            q = Fraction(rng.randint(-40, 40), rng.randint(1, 30))
            return ex.const(q), mpmath.mpf(q.numerator) / q.denominator
        q = Fraction(rng.randint(-12, 12), rng.randint(1, 12))
        return ex.pi_times(q), mpmath.pi * q.numerator / q.denominator
    kind = rng.choice(["add", "sub", "mul", "div", "cos", "sin", "sqrt", "acos"])
    a, av = random_expr(rng, depth - 1)
    if kind in ("add", "sub", "mul", "div"):
        b, bv = random_expr(rng, depth - 1)
        if kind == "add":
            return a + b, av + bv
        if kind == "sub":
            return a - b, av - bv
        if kind == "mul":
            return a * b, av * bv
        # keep the divisor away from zero
        d, dv = 2 + ex.cos(b), 2 + mpmath.cos(bv)
        return a / d, av / dv
    if kind == "cos":
        return ex.cos(a), mpmath.cos(av)
    if kind == "sin":
        return ex.sin(a), mpmath.sin(av)
    if kind == "sqrt":
        return ex.sqrt(a * a + 1), mpmath.sqrt(av * av + 1)
    return ex.acos(ex.cos(a) / 3), mpmath.acos(mpmath.cos(av) / 3)


def test_enclosures_are_sound():
    rng = random.Random(1234)
    for _ in range(1000):
        with mpmath.workprec(600):
            e, v = random_expr(rng, 3)
            ref = mp_fraction(+v)
        slack = Fraction(1, 2**500) * (1 + abs(ref))
        widths = []
        for prec in (64, 128, 256):
            lo, hi = ex.eval_interval(ex.lift(e), prec)
            assert lo <= ref + slack and ref - slack <= hi, (str(e), prec)
            widths.append(hi - lo)
        assert widths[1] <= widths[0] and widths[2] <= widths[1]
        if widths[0] > 0:
            assert widths[1] <= widths[0] / 2


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**4), st.integers(1, 5000))
def test_rounding_brackets_rationals(num, den, D):
    q = Fraction(num, den)
    up, down = ex.round_up(ex.const(q), D), ex.round_down(ex.const(q), D)
    assert down <= q <= up
    assert up - down <= Fraction(1, D)
    assert (up * D).denominator == 1 and (down * D).denominator == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(-360, 360), st.integers(1, 97), st.sampled_from([7, 60, 3000, 10**6]))
def test_rounding_brackets_cosines(k, m, D):
    e = 1 - ex.cos(ex.pi_times(Fraction(k, m)))
    up, down = ex.round_up(e, D), ex.round_down(e, D)
    assert up - down <= Fraction(1, D)
    if isinstance(e, ex.Const):
        # rational cosine: the folded value is exact
        assert down <= e.value <= up
        if (e.value * D).denominator == 1:
            assert up == down == e.value
        return
    with mpmath.workprec(300):
        ref = mp_fraction(1 - mpmath.cos(mpmath.pi * k / m))
    slack = Fraction(1, 2**280)
    assert down <= ref + slack and ref - slack <= up
    assert up != down

def test_grid_points_are_fixed():
    for k in range(-5, 6):
        e = ex.const(Fraction(k, 3000))
        assert ex.round_up(e, 3000) == ex.round_down(e, 3000) == Fraction(k, 3000)
