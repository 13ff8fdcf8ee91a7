"""Measure of C_θ, the union of four radius-θ caps at a regular tetrahedron.

sigma(C_θ) is piecewise: the four caps are disjoint up to
θ = ½·arccos(-1/3), overlap in six congruent lunes up to θ = arccos(1/3),
and cover the sphere beyond that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sphere import sample_sphere, tetrahedron_array

CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class UnionMeasureBreakpoints:
    theta_tangent: float
    theta_cover: float


BREAKPOINTS = UnionMeasureBreakpoints(
    theta_tangent=0.5 * math.acos(-1.0 / 3.0),
    theta_cover=math.acos(1.0 / 3.0),
)
# smallest cap radius a vertex can have and still be left unlit by some rotation
ALWAYS_LIT_RADIUS = math.pi / 2 - BREAKPOINTS.theta_cover


def _acos_clamped(x: float) -> float:
    if x < -1.0 - CLAMP_TOL or x > 1.0 + CLAMP_TOL:
        raise DomainError(f"acos argument {x!r} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


def lune_area(theta: float) -> float:
    """Normalized measure of the intersection of two of the four caps."""
    lo, hi = BREAKPOINTS.theta_tangent, BREAKPOINTS.theta_cover
    if not (lo - CLAMP_TOL <= theta <= hi + CLAMP_TOL):
        raise DomainError(f"lune formula needs theta in [{lo}, {hi}], got {theta!r}")
    c, s = math.cos(theta), math.sin(theta)
    first = _acos_clamped((-1.0 / 3.0 - c * c) / (s * s))
    second = _acos_clamped(math.sqrt(2.0) * c / s)
    return max(0.0, (-first - 2.0 * second * c + math.pi) / (2.0 * math.pi))


def union_case(theta: float) -> int:
    """Which branch (1 disjoint, 2 overlapping, 3 covering) applies at ``theta``."""
    if not (0.0 < theta <= math.pi / 2):
        raise DomainError(f"theta must lie in (0, pi/2], got {theta!r}")
    if theta <= BREAKPOINTS.theta_tangent:
        return 1
    if theta < BREAKPOINTS.theta_cover:
        return 2
    return 3


def union_measure(theta: float) -> float:
    case = union_case(theta)
    if case == 1:
        return 2.0 * (1.0 - math.cos(theta))
    if case == 2:
        return min(1.0, 2.0 * (1.0 - math.cos(theta)) - 6.0 * lune_area(theta))
    return 1.0


def union_measure_mc(
    theta: float, samples: int, rng: np.random.Generator, chunk: int = 1 << 20
) -> tuple[float, float]:
    """Monte Carlo estimate of sigma(C_θ) with its binomial standard error."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    tet = tetrahedron_array()
    ct = math.cos(theta)
    hits = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        p = sample_sphere(rng, n)
        hits += int(np.count_nonzero((p @ tet.T).max(axis=1) >= ct))
        done += n
    est = hits / samples
    return est, math.sqrt(est * (1.0 - est) / samples)


def unlit_probability(phi: float) -> float:
    """Probability that a Haar-random tetrahedron leaves a radius-phi cap unlit."""
    if not (0.0 <= phi < math.pi / 2):
        raise DomainError(f"phi must lie in [0, pi/2), got {phi!r}")
    theta = math.pi / 2 - phi
    if theta >= BREAKPOINTS.theta_cover:
        return 0.0
    p = 1.0 - union_measure(theta)
    if p < 0.0:
        if p < -CLAMP_TOL:
            raise ArithmeticError(f"negative unlit probability {p!r}")
        return 0.0
    return min(p, 1.0)
