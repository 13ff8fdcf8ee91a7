"""The discretized integer program bounding the expected number of unlit caps.

Caps are binned by radius into (a_i, a_{i+1}] on a uniform grid from
19pi/180 to pi/2; n_i counts caps in bin i. The program is

    maximize   sum n_i * c_i                (c_i >= 1 - sigma(C_{pi/2 - a_{i+1}}))
    subject to sum n_i * w_i <= 1           (w_i <= (1 - cos a_i)/2, packing)
               sum_{a_i >= pi/4} n_i <= 4   (no five caps larger than pi/4)

with c_i rounded up and w_i rounded down to a 1/D grid, so the optimum of
the rational program bounds the real one from above. It is solved exactly
by dynamic programming over integer-scaled capacity.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from . import expr as ex
from .cover import union_measure
from .errors import InfeasibleModel, UnboundedModel, VerificationFailed

DEFAULT_T = 250
DEFAULT_D = 3000
BIGCAP_CAPACITY = 4

THETA_TANGENT = ex.acos(ex.const(Fraction(-1, 3))) / 2
THETA_COVER = ex.acos(ex.const(Fraction(1, 3)))
QUARTER_PI = ex.pi_times(Fraction(1, 4))

# Packing-constraint rounding. "doubled" rounds 1 - cos a_i to the 1/D grid
# against capacity 2 (the form that produced the published 2999/1000);
# "direct" rounds (1 - cos a_i)/2 against capacity 1.
PACKING_FORMS = ("doubled", "direct")


@dataclass(frozen=True)
class IlpModel:
    t: int
    D: int
    obj: tuple[Fraction, ...]
    weight: tuple[Fraction, ...]
    bigcap_indices: frozenset[int]
    capacity: Fraction = Fraction(1)
    bigcap_capacity: int = BIGCAP_CAPACITY
    packing_form: str = "doubled"

    def __post_init__(self):
        if len(self.obj) != len(self.weight):
            raise ValueError("objective and weight vectors differ in length")


@dataclass(frozen=True)
class IlpSolution:
    objective: Fraction | float
    counts: tuple[int, ...]
    proof_mode: str = "exact"


@dataclass
class CertificateReport:
    t: int
    D: int | None
    M_t: Fraction | float
    floor_M_t: int
    verdict_lt_3: bool
    directions_bound: int
    counts: list[int]
    mode: str
    packing_used: Fraction | float = 0
    bigcaps_used: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        if isinstance(self.M_t, Fraction):
            m = {"num": self.M_t.numerator, "den": self.M_t.denominator}
        else:
            m = {"approx": self.M_t}
        out = {
            "t": self.t,
            "D": self.D,
            "M_t": m,
            "floor_M_t": self.floor_M_t,
            "verdict_lt_3": self.verdict_lt_3,
            "counts": self.counts,
            "mode": self.mode,
        }
        if self.mode != "exact":
            out["certified"] = False
        return out


def union_measure_expr(theta: ex.Expr) -> ex.Expr:
    """Exact expression for sigma(C_theta), the piece chosen by certified comparison.

    theta = 0 is taken as the limit value 0.
    """
    if isinstance(theta, ex.Const) and theta.value == 0:
        return ex.const(0)
    if ex.compare(theta, THETA_TANGENT) < 0:
        return 2 * (1 - ex.cos(theta))
    if ex.compare(theta, THETA_COVER) < 0:
        c, s = ex.cos(theta), ex.sin(theta)
        lune = (
            -ex.acos((ex.const(Fraction(-1, 3)) - c * c) / (s * s))
            - 2 * ex.acos(ex.sqrt(ex.const(2)) * ex.cot(theta)) * c
            + ex.PI
        )
        return 2 * (1 - c) - 6 * (lune / (2 * ex.PI))
    return ex.const(1)


def objective_expr(a_next: ex.Expr) -> ex.Expr:
    return 1 - union_measure_expr(ex.pi_times(Fraction(1, 2)) - a_next)


def weight_expr(a: ex.Expr) -> ex.Expr:
    return (1 - ex.cos(a)) / 2


def build_model(t: int = DEFAULT_T, D: int = DEFAULT_D, packing_form: str = "doubled", threads: int = 1) -> IlpModel:
    if t < 1 or D < 1:
        raise ValueError("t and D must be positive")
    if packing_form not in PACKING_FORMS:
        raise ValueError(f"packing_form must be one of {PACKING_FORMS}")
    a = ex.discretization_grid(t)

    def coeffs(i: int) -> tuple[Fraction, Fraction]:
        c = ex.round_up(objective_expr(a[i + 1]), D)
        if packing_form == "doubled":
            w = ex.round_down(1 - ex.cos(a[i]), D) / 2
        else:
            w = ex.round_down(weight_expr(a[i]), D)
        return c, w

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            pairs = list(pool.map(coeffs, range(t)))
    else:
        pairs = [coeffs(i) for i in range(t)]
    # a_i and pi/4 are both rational multiples of pi: the comparison is exact.
    # An exact tie is left out, which only relaxes the cardinality constraint.
    big = frozenset(i for i in range(t) if a[i].coef > Fraction(1, 4))
    return IlpModel(
        t=t,
        D=D,
        obj=tuple(c for c, _ in pairs),
        weight=tuple(w for _, w in pairs),
        bigcap_indices=big,
        packing_form=packing_form,
    )


def _lcm(values: Sequence[int]) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


def _knapsack_tables(profit, weight, big, capacity: int, bigcap: int, dtype):
    """Suffix tables: best[i][c, b] = max profit from items i.. with weight <= c, big count <= b."""
    t = len(profit)
    best = np.zeros((t + 1, capacity + 1, bigcap + 1), dtype=dtype)
    for i in range(t - 1, -1, -1):
        nxt = best[i + 1]
        cur = nxt.copy()
        p, w = profit[i], weight[i]
        if p > 0:
            kmax = capacity // w if w > 0 else bigcap
            if i in big:
                kmax = min(kmax, bigcap)
            for k in range(1, kmax + 1):
                s, bb = k * w, (k if i in big else 0)
                np.maximum(cur[s:, bb:], nxt[: capacity + 1 - s, : bigcap + 1 - bb] + k * p, out=cur[s:, bb:])
        best[i] = cur
    return best


def _check_bounded(profit, weight, big) -> None:
    for i, (p, w) in enumerate(zip(profit, weight)):
        if w < 0:
            raise InfeasibleModel(f"negative weight at index {i}")
        if w == 0 and p > 0 and i not in big:
            raise UnboundedModel(f"item {i} has positive objective and zero packing weight")


def solve_exact(m: IlpModel) -> IlpSolution:
    """Exact optimum with the lexicographically smallest optimal count vector."""
    if m.capacity < 0 or m.bigcap_capacity < 0:
        raise InfeasibleModel("negative capacity makes even n = 0 infeasible")
    if any(c < 0 for c in m.obj):
        raise ValueError("objective coefficients must be nonnegative")
    pscale = _lcm([c.denominator for c in m.obj])
    wscale = _lcm([w.denominator for w in m.weight] + [m.capacity.denominator])
    profit = [int(c * pscale) for c in m.obj]
    weight = [int(w * wscale) for w in m.weight]
    capacity = int(m.capacity * wscale)
    big = m.bigcap_indices
    _check_bounded(profit, weight, big)
    bound = sum(p * (capacity // w if w else m.bigcap_capacity) for p, w in zip(profit, weight))
    dtype = np.int64 if bound < 2**62 else object
    best = _knapsack_tables(profit, weight, big, capacity, m.bigcap_capacity, dtype)
    counts = []
    c, b = capacity, m.bigcap_capacity
    for i in range(m.t):
        target = best[i][c, b]
        k = 0
        while True:
            s, bb = k * weight[i], (k if i in big else 0)
            if s <= c and bb <= b and k * profit[i] + best[i + 1][c - s, b - bb] == target:
                break
            k += 1
        counts.append(k)
        c -= k * weight[i]
        b -= k if i in big else 0
    return IlpSolution(Fraction(int(best[0][capacity, m.bigcap_capacity]), pscale), tuple(counts), "exact")


def _float_mu(theta: float) -> float:
    return 0.0 if theta <= 0 else union_measure(theta)


def solve_float(t: int, grid: int = 10000) -> IlpSolution:
    """Non-certified estimate of M_t with double-precision coefficients.

    The packing weights 1 - cos a_i are rounded to the nearest multiple of
    1/grid against capacity 2; the same DP is then run in floating point.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    a0, at = 19 * math.pi / 180, math.pi / 2
    a = [a0 + i * (at - a0) / t for i in range(t)] + [at]
    profit = [1.0 - _float_mu(at - a[i + 1]) for i in range(t)]
    weight = [int(round((1.0 - math.cos(a[i])) * grid)) for i in range(t)]
    big = {i for i in range(t) if a[i] >= math.pi / 4}
    capacity = 2 * grid
    _check_bounded(profit, weight, big)
    # rolling table, value only
    best = np.zeros((capacity + 1, BIGCAP_CAPACITY + 1))
    for i in range(t - 1, -1, -1):
        p, w = profit[i], weight[i]
        if p <= 0:
            continue
        cur = best.copy()
        kmax = capacity // w if w else BIGCAP_CAPACITY
        if i in big:
            kmax = min(kmax, BIGCAP_CAPACITY)
        for k in range(1, kmax + 1):
            s, bb = k * w, (k if i in big else 0)
            np.maximum(cur[s:, bb:], best[: capacity + 1 - s, : BIGCAP_CAPACITY + 1 - bb] + k * p, out=cur[s:, bb:])
        best = cur
    return IlpSolution(float(best[capacity, BIGCAP_CAPACITY]), (), "float")


def certify(sol: IlpSolution, m: IlpModel) -> CertificateReport:
    """Re-check a witness in exact arithmetic and state the direction bound."""
    if sol.proof_mode != "exact":
        raise VerificationFailed("only exact solutions can be certified")
    counts = list(sol.counts)
    if len(counts) != m.t or any((not isinstance(n, int)) or n < 0 for n in counts):
        raise VerificationFailed("counts must be t nonnegative integers")
    packing = sum((n * w for n, w in zip(counts, m.weight)), Fraction(0))
    if packing > m.capacity:
        raise VerificationFailed(f"packing constraint violated: {packing} > {m.capacity}")
    bigs = sum(counts[i] for i in m.bigcap_indices)
    if bigs > m.bigcap_capacity:
        raise VerificationFailed(f"big-cap constraint violated: {bigs} > {m.bigcap_capacity}")
    value = sum((n * c for n, c in zip(counts, m.obj)), Fraction(0))
    if value != sol.objective:
        raise VerificationFailed(f"objective mismatch: witness gives {value}, solution claims {sol.objective}")
    fl = math.floor(value)
    return CertificateReport(
        t=m.t,
        D=m.D,
        M_t=value,
        floor_M_t=fl,
        verdict_lt_3=value < 3,
        directions_bound=4 + fl,
        counts=counts,
        mode="exact",
        packing_used=packing,
        bigcaps_used=bigs,
    )


def float_report(t: int, grid: int = 10000) -> CertificateReport:
    t0 = time.perf_counter()
    sol = solve_float(t, grid)
    elapsed = time.perf_counter() - t0
    v = float(sol.objective)
    return CertificateReport(
        t=t,
        D=None,
        M_t=v,
        floor_M_t=math.floor(v),
        verdict_lt_3=v < 3,
        directions_bound=4 + math.floor(v),
        counts=[],
        mode="float",
        extra={"solve_seconds": elapsed, "grid": grid},
    )
