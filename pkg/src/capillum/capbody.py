"""Cap bodies: validated systems of pairwise non-overlapping base caps.

A cap body conv({x_1..x_m} ∪ B^3) is described by its base caps
C[x̂_i, φ_i] with x̂_i = x_i/|x_i| and φ_i = arccos(1/|x_i|). The open base
caps must be pairwise disjoint and every radius acute.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import OverlappingCaps, RadiusOutOfRange, VertexInsideBall
from .sphere import Cap, UnitVector, geodesic_distance, sample_sphere

TANGENCY_TOL = 1e-12
QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class Vertex:
    position: tuple[float, float, float]

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.position))


@dataclass(frozen=True)
class CapBody:
    """Base caps sorted by radius, largest first.

    Build through :func:`from_caps` (or :func:`from_vertices`), which
    validates; the constructor itself trusts its input.
    """

    caps: tuple[Cap, ...]

    def __len__(self) -> int:
        return len(self.caps)

    @property
    def radii(self) -> np.ndarray:
        return np.array([c.radius for c in self.caps])

    @property
    def centers(self) -> np.ndarray:
        return np.array([[c.center.x, c.center.y, c.center.z] for c in self.caps]).reshape(-1, 3)

    @property
    def vertices(self) -> list[Vertex]:
        return [vertex_of(c) for c in self.caps]

    def total_measure(self) -> float:
        return float(np.sum((1.0 - np.cos(self.radii)) / 2.0))

    def to_json(self) -> dict:
        return {
            "caps": [
                {"center": [c.center.x, c.center.y, c.center.z], "radius_rad": c.radius}
                for c in self.caps
            ]
        }


def _check_radius(r: float) -> None:
    if not (0.0 < r < math.pi / 2):
        raise RadiusOutOfRange(f"base cap radius must lie in (0, pi/2), got {r!r}")


def from_caps(caps: Sequence[Cap]) -> CapBody:
    """Validate and canonicalize a list of base caps.

    Raises :class:`RadiusOutOfRange` or :class:`OverlappingCaps` (naming the
    pair by input position). Exactly tangent caps are accepted.
    """
    if not caps:
        raise ValueError("a cap body needs at least one cap")
    for c in caps:
        _check_radius(c.radius)
    for i in range(len(caps)):
        for j in range(i + 1, len(caps)):
            d = geodesic_distance(caps[i].center, caps[j].center)
            s = caps[i].radius + caps[j].radius
            if d < s - TANGENCY_TOL:
                raise OverlappingCaps(i, j, d, s)
    order = sorted(range(len(caps)), key=lambda k: -caps[k].radius)
    return CapBody(tuple(Cap(caps[k].center, caps[k].radius, True) for k in order))


def vertex_of(c: Cap) -> Vertex:
    _check_radius(c.radius)
    s = 1.0 / math.cos(c.radius)
    return Vertex((c.center.x * s, c.center.y * s, c.center.z * s))


def cap_of(v: Vertex) -> Cap:
    n = v.norm
    if n <= 1.0 + TANGENCY_TOL:
        raise VertexInsideBall(f"vertex {v.position} has norm {n!r} <= 1")
    return Cap(UnitVector.of(v.position), math.acos(1.0 / n), True)


def from_vertices(vertices: Sequence[Vertex | Sequence[float]]) -> CapBody:
    vs = [v if isinstance(v, Vertex) else Vertex(tuple(float(c) for c in v)) for v in vertices]
    return from_caps([cap_of(v) for v in vs])


def k0() -> CapBody:
    """Six caps of radius pi/4 at ±e_i: vertices of the octahedron scaled by √2."""
    axes = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    return from_caps([Cap(UnitVector.of(a), QUARTER_PI) for a in axes])


def fifth_largest_radius_bound(body: CapBody) -> bool:
    """True iff the body has fewer than five caps or its fifth radius is <= pi/4."""
    return len(body) < 5 or body.caps[4].radius <= QUARTER_PI + TANGENCY_TOL


def generate_random_body(
    rng: np.random.Generator,
    target_count: int,
    radius_range: tuple[float, float],
    max_candidates: int = 2000,
) -> CapBody:
    """Greedy rejection packing of random caps.

    Candidates (uniform center, uniform radius in ``radius_range``) are
    considered in order; each is kept iff it is disjoint from every cap kept
    so far. Stops after ``target_count`` caps or ``max_candidates`` draws.
    """
    lo, hi = radius_range
    if not (0.0 < lo <= hi < math.pi / 2):
        raise RadiusOutOfRange(f"need 0 < lo <= hi < pi/2, got {radius_range!r}")
    if target_count < 1:
        raise ValueError("target_count must be positive")
    centers = sample_sphere(rng, max_candidates)
    radii = rng.uniform(lo, hi, max_candidates) if hi > lo else np.full(max_candidates, lo)
    alive = np.ones(max_candidates, dtype=bool)
    kept: list[int] = []
    start = 0
    while len(kept) < target_count:
        idx = np.flatnonzero(alive[start:])
        if idx.size == 0:
            break
        k = start + int(idx[0])
        kept.append(k)
        alive[k] = False
        start = k + 1
        # drop later candidates that overlap the cap just accepted
        dots = np.clip(centers[start:] @ centers[k], -1.0, 1.0)
        clash = np.arccos(dots) < radii[start:] + radii[k] + TANGENCY_TOL
        alive[start:] &= ~clash
    caps = [Cap(UnitVector.of(centers[k]), float(radii[k])) for k in kept]
    return from_caps(caps)


def load_body(path: str | Path) -> CapBody:
    """Read a cap-body JSON file (``caps`` or ``vertices`` form)."""
    with open(path) as fh:
        data = json.load(fh)
    return body_from_json(data)


def body_from_json(data: dict) -> CapBody:
    if not isinstance(data, dict):
        raise ValueError("cap-body file must hold a JSON object")
    has_caps, has_vertices = "caps" in data, "vertices" in data
    if has_caps == has_vertices:
        raise ValueError('cap-body file needs exactly one of "caps" or "vertices"')
    if has_vertices:
        return from_vertices([_triple(v) for v in data["vertices"]])
    caps = []
    for entry in data["caps"]:
        r = float(entry["radius_rad"])
        if r >= math.pi / 2 - TANGENCY_TOL:
            raise RadiusOutOfRange(f"radius {r!r} is not acute")
        _check_radius(r)
        caps.append(Cap(UnitVector.of(_triple(entry["center"])), r))
    return from_caps(caps)


def _triple(v) -> tuple[float, float, float]:
    if len(v) != 3:
        raise ValueError(f"expected 3 coordinates, got {v!r}")
    return tuple(float(c) for c in v)


def save_body(body: CapBody, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(body.to_json(), fh, indent=2)
        fh.write("\n")
