import itertools
import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from capillum import expr as ex
from capillum import ilp
from capillum.errors import UnboundedModel, VerificationFailed
from oracles import brute_force_ilp, iv_bounds, true_objective_iv, true_weight_iv


@pytest.fixture(scope="module")
def model250():
    return ilp.build_model(250, 3000)


@pytest.fixture(scope="module")
def solution250(model250):
    return ilp.solve_exact(model250)


def test_t1_model():
    m = ilp.build_model(1, 3000)
    assert m.obj == (Fraction(1),)
    # floor(3000 * (1 - cos(19pi/180))) = floor(163.44) = 163
    assert m.weight == (Fraction(163, 6000),)
    assert m.bigcap_indices == frozenset()
    assert m.capacity == 1


def test_t1_direct_packing_form():
    m = ilp.build_model(1, 3000, packing_form="direct")
    # floor(3000 * 0.0272407) = 81
    assert m.weight == (Fraction(81, 3000),)
    sol = ilp.solve_exact(m)
    assert sol.objective == 37 and sol.counts == (37,)


def test_t1_solution():
    sol = ilp.solve_exact(ilp.build_model(1, 3000))
    # floor(6000 / 163) = 36
    assert sol.objective == 36 and sol.counts == (36,)


def test_zero_coefficients_above_cover_threshold(model250):
    a = ex.discretization_grid(250)
    for i in range(250):
        theta = ex.pi_times(Fraction(1, 2)) - a[i + 1]
        if not isinstance(theta, ex.Const) and ex.compare(theta, ilp.THETA_COVER) >= 0:
            assert model250.obj[i] == 0
    assert model250.obj[0] == 0
    assert model250.obj[-1] == 1


def test_bigcap_threshold(model250):
    # a_i >= pi/4  <=>  i >= 250 * 26/71 = 91.55
    assert model250.bigcap_indices == frozenset(range(92, 250))
    a0 = 19 * math.pi / 180
    floats = {i for i in range(250) if a0 + i * (math.pi / 2 - a0) / 250 >= math.pi / 4}
    assert floats == model250.bigcap_indices


def test_coefficient_ranges(model250):
    assert all(0 <= c <= 1 for c in model250.obj)
    assert all(w > 0 for w in model250.weight)
    assert all(w.denominator in (1, 2, 3000, 6000) or 6000 % w.denominator == 0 for w in model250.weight)
    assert all(3000 % c.denominator == 0 for c in model250.obj)


def test_headline_value(solution250):
    assert solution250.objective == Fraction(2999, 1000)


def test_certificate(model250, solution250):
    rep = ilp.certify(solution250, model250)
    assert rep.M_t == Fraction(2999, 1000)
    assert rep.floor_M_t == 2 and rep.verdict_lt_3 and rep.directions_bound == 6
    assert rep.packing_used <= 1 and rep.bigcaps_used <= 4
    assert rep.to_json()["M_t"] == {"num": 2999, "den": 1000}


def test_certify_zero_solution(model250):
    zero = ilp.IlpSolution(Fraction(0), (0,) * 250)
    rep = ilp.certify(zero, model250)
    assert rep.M_t == 0 and rep.verdict_lt_3


def test_certify_rejects_tampering(model250, solution250):
    counts = [0] * 250
    for i in (92, 93, 94, 95, 96):
        counts[i] = 1
    value = sum(n * c for n, c in zip(counts, model250.obj))
    with pytest.raises(VerificationFailed, match="big-cap"):
        ilp.certify(ilp.IlpSolution(value, tuple(counts)), model250)
    with pytest.raises(VerificationFailed, match="objective"):
        ilp.certify(replace(solution250, objective=Fraction(3)), model250)
    heavy = [0] * 250
    heavy[0] = 1000
    with pytest.raises(VerificationFailed, match="packing"):
        ilp.certify(ilp.IlpSolution(Fraction(0), tuple(heavy)), model250)


def test_all_zero_objective():
    m = ilp.IlpModel(t=3, D=10, obj=(Fraction(0),) * 3, weight=(Fraction(1, 10),) * 3, bigcap_indices=frozenset())
    sol = ilp.solve_exact(m)
    assert sol.objective == 0 and sol.counts == (0, 0, 0)


def test_unbounded_detected():
    m = ilp.IlpModel(t=2, D=10, obj=(Fraction(1), Fraction(1)), weight=(Fraction(0), Fraction(1, 2)), bigcap_indices=frozenset())
    with pytest.raises(UnboundedModel):
        ilp.solve_exact(m)
    capped = replace(m, bigcap_indices=frozenset({0}))
    assert ilp.solve_exact(capped).objective == 4 + 2


def test_dp_matches_brute_force_on_random_models():
    rng = np.random.default_rng(17)
    for _ in range(200):
        t = int(rng.integers(1, 6))
        D = int(rng.integers(5, 40))
        obj = tuple(Fraction(int(rng.integers(0, D + 1)), D) for _ in range(t))
        weight = tuple(Fraction(int(rng.integers(1, D)), 2 * D) for _ in range(t))
        big = frozenset(i for i in range(t) if rng.random() < 0.4)
        bigcap = int(rng.integers(0, 5))
        m = ilp.IlpModel(t=t, D=D, obj=obj, weight=weight, bigcap_indices=big, bigcap_capacity=bigcap)
        sol = ilp.solve_exact(m)
        ref, _ = brute_force_ilp(obj, weight, big, Fraction(1), bigcap)
        assert sol.objective == ref
        ilp.certify(sol, m)


def test_lexicographically_smallest_witness():
    m = ilp.IlpModel(t=3, D=4, obj=(Fraction(1, 4),) * 3, weight=(Fraction(1, 4),) * 3, bigcap_indices=frozenset())
    sol = ilp.solve_exact(m)
    assert sol.objective == 1
    best = min(c for c in itertools.product(range(5), repeat=3) if sum(c) == 4)
    assert sol.counts == best == (0, 0, 4)


def test_monotone_in_capacities():
    base = ilp.build_model(6, 60)
    v0 = ilp.solve_exact(base).objective
    assert ilp.solve_exact(replace(base, bigcap_capacity=5)).objective >= v0
    assert ilp.solve_exact(replace(base, capacity=Fraction(3, 2))).objective >= v0
    assert ilp.solve_exact(replace(base, bigcap_capacity=3)).objective <= v0


def test_deterministic():
    a = ilp.solve_exact(ilp.build_model(40, 300))
    b = ilp.solve_exact(ilp.build_model(40, 300))
    assert a == b


def test_threads_do_not_change_model():
    assert ilp.build_model(30, 500, threads=4) == ilp.build_model(30, 500)


def test_rounding_direction_small_model():
    m = ilp.build_model(20, 3000)
    a = ex.discretization_grid(20)
    for i in range(20):
        lo, hi = iv_bounds(true_objective_iv(a[i + 1].coef))
        assert m.obj[i] >= hi and m.obj[i] - lo <= Fraction(1, 3000)
        wlo, whi = iv_bounds(true_weight_iv(a[i].coef))
        assert m.weight[i] <= wlo


def test_float_mode_small_and_mid():
    assert ilp.solve_float(1).objective == pytest.approx(36.0)
    assert abs(ilp.solve_float(250).objective - 2.999) < 0.01


def test_float_report_json():
    rep = ilp.float_report(50)
    js = rep.to_json()
    assert js["mode"] == "float" and js["certified"] is False
    assert "approx" in js["M_t"]
