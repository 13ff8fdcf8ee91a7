"""Finding and checking illuminating direction sets for cap bodies.

Directions v_1..v_k illuminate a cap body when (i) every base cap S_i has
some v_j in the open cap C(-x̂_i, pi/2 - phi_i), equivalently
<x̂_i, v_j> < -sin(phi_i), and (ii) the positive hull of the v_j is all of
E^3. The search rotates the regular tetrahedron at random until at most two
caps are left unlit, then adds -x̂_i for each of those.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path


import numpy as np
from scipy.optimize import linprog

from .capbody import CapBody
from .cover import ALWAYS_LIT_RADIUS
from .errors import SearchExhausted
from .sphere import (
    Cap,
    Rotation,
    UnitVector,
    as_points,
    quaternions_to_matrices,
    random_quaternions,
    tetrahedron_array,
)

HULL_EPS = 1e-9
DEFAULT_BUDGET = 100_000
BLOCK = 4096
MAX_UNLIT = 2


@dataclass(frozen=True)
class DirectionSet:
    directions: tuple[UnitVector, ...]

    def __post_init__(self):
        if not self.directions:
            raise ValueError("a direction set must be nonempty")

    @classmethod
    def of(cls, vectors) -> "DirectionSet":
        return cls(tuple(v if isinstance(v, UnitVector) else UnitVector.of(v) for v in vectors))

    def __len__(self) -> int:
        return len(self.directions)

    def as_array(self) -> np.ndarray:
        return as_points(self.directions)

    def to_json(self) -> dict:
        return {"directions": [[v.x, v.y, v.z] for v in self.directions]}


@dataclass(frozen=True)
class IlluminationReport:
    per_cap: tuple[tuple[int, int | None], ...]
    hull_ok: bool

    @property
    def illuminated(self) -> bool:
        return self.hull_ok and all(j is not None for _, j in self.per_cap)

    @property
    def unlit(self) -> list[int]:
        return [i for i, j in self.per_cap if j is None]

    def to_json(self) -> dict:
        return {
            "illuminated": self.illuminated,
            "hull_ok": self.hull_ok,
            "unlit": self.unlit,
            "per_cap": [{"cap": i, "direction": j} for i, j in self.per_cap],
            "status": "illuminated" if self.illuminated else "not verified by this criterion",
        }


def cap_illuminated_by(cap: Cap, v: UnitVector) -> bool:
    return cap.center.dot(v) < -math.sin(cap.radius)


def _lit_matrix(centers: np.ndarray, radii: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Boolean (m, k): direction j lights cap i."""
    return centers @ dirs.T < -np.sin(radii)[:, None]


def positive_hull_spans(dirs: DirectionSet | np.ndarray) -> bool:
    """True iff the origin is interior to conv(dirs), i.e. pos(dirs) = E^3.

    Solves  max eps  s.t.  sum l_i v_i = 0, sum l_i = 1, l_i >= eps.
    """
    v = dirs.as_array() if isinstance(dirs, DirectionSet) else np.asarray(dirs, dtype=float)
    k = v.shape[0]
    if k < 4:
        return False
    # variables (l_1..l_k, eps); minimize -eps
    c = np.zeros(k + 1)
    c[-1] = -1.0
    a_eq = np.zeros((4, k + 1))
    a_eq[:3, :k] = v.T
    a_eq[3, :k] = 1.0
    b_eq = np.array([0.0, 0.0, 0.0, 1.0])
    a_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    b_ub = np.zeros(k)
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * k + [(None, 1.0)], method="highs")
    return bool(res.status == 0 and -res.fun > HULL_EPS)


def unlit_caps(body: CapBody, dirs: DirectionSet) -> list[int]:
    lit = _lit_matrix(body.centers, body.radii, dirs.as_array())
    return [int(i) for i in np.flatnonzero(~lit.any(axis=1))]


def verify_illumination(body: CapBody, dirs: DirectionSet) -> IlluminationReport:
    lit = _lit_matrix(body.centers, body.radii, dirs.as_array())
    per_cap = []
    for i in range(len(body)):
        hits = np.flatnonzero(lit[i])
        per_cap.append((i, int(hits[0]) if hits.size else None))
    return IlluminationReport(tuple(per_cap), positive_hull_spans(dirs))


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _score_block(centers, radii, seed: int, block: int, n: int):
    q = random_quaternions(_block_rng(seed, block), n)
    tet = np.einsum("nij,kj->nki", quaternions_to_matrices(q), tetrahedron_array())
    # (n, m, 4): rotated vertex l lights cap i
    lit = np.einsum("mi,nki->nmk", centers, tet) < -np.sin(radii)[None, :, None]
    unlit = ~lit.any(axis=2)
    counts = unlit.sum(axis=1)
    j = int(np.argmin(counts))
    return int(counts[j]), q[j], [int(i) for i in np.flatnonzero(unlit[j])]


def search_rotation(
    body: CapBody, budget: int = DEFAULT_BUDGET, seed: int = 0, threads: int = 1
) -> tuple[Rotation, list[int]]:
    """Best of up to ``budget`` Haar rotations of the tetrahedron.

    Rotations are drawn in fixed-size blocks, block b from its own stream
    spawned off ``seed``, so the result does not depend on ``threads``.
    Caps with radius below pi/2 - arccos(1/3) are lit by every rotation and
    are left out of the scoring. Raises :class:`SearchExhausted` if every
    sample leaves more than two caps unlit.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    radii = body.radii
    active = np.flatnonzero(radii >= ALWAYS_LIT_RADIUS)
    if active.size == 0:
        q = random_quaternions(_block_rng(seed, 0), 1)[0]
        return Rotation(tuple(q)), []
    centers, act_r = body.centers[active], radii[active]
    nblocks = -(-budget // BLOCK)
    sizes = [min(BLOCK, budget - b * BLOCK) for b in range(nblocks)]
    best = None
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for start in range(0, nblocks, max(1, threads)):
            wave = range(start, min(nblocks, start + max(1, threads)))
            if pool is None:
                results = [_score_block(centers, act_r, seed, b, sizes[b]) for b in wave]
            else:
                results = list(pool.map(lambda b: _score_block(centers, act_r, seed, b, sizes[b]), wave))
            for count, q, unlit in results:
                if best is None or count < best[0]:
                    best = (count, q, unlit)
            if best[0] == 0:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    count, q, unlit = best
    if count > MAX_UNLIT:
        raise SearchExhausted(f"best of {budget} rotations leaves {count} caps unlit")
    return Rotation(tuple(q)), [int(active[i]) for i in unlit]


def illuminate(body: CapBody, budget: int = DEFAULT_BUDGET, seed: int = 0, threads: int = 1) -> DirectionSet:
    """At most six directions: a rotated tetrahedron plus -x̂_i per unlit cap."""
    rot, unlit = search_rotation(body, budget, seed, threads)
    dirs = [UnitVector.of(p) for p in rot.apply(tetrahedron_array())]
    dirs += [-body.caps[i].center for i in unlit]
    return DirectionSet(tuple(dirs))


def load_directions(path: str | Path) -> DirectionSet:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "directions" not in data:
        raise ValueError('direction file needs a "directions" list')
    vecs = data["directions"]
    if not vecs or any(len(v) != 3 for v in vecs):
        raise ValueError("directions must be a nonempty list of 3-vectors")
    return DirectionSet.of([[float(c) for c in v] for v in vecs])


def save_directions(dirs: DirectionSet, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(dirs.to_json(), fh, indent=2)
        fh.write("\n")


def octahedron_directions() -> DirectionSet:
    return DirectionSet.of([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])


def empirical_unlit(body: CapBody, rotations: int, rng: np.random.Generator) -> np.ndarray:
    """Unlit-cap count for each of ``rotations`` Haar rotations of the tetrahedron."""
    q = random_quaternions(rng, rotations)
    tet = np.einsum("nij,kj->nki", quaternions_to_matrices(q), tetrahedron_array())
    lit = np.einsum("mi,nki->nmk", body.centers, tet) < -np.sin(body.radii)[None, :, None]
    return (~lit.any(axis=2)).sum(axis=1)


def rotate_body_and_dirs(body: CapBody, dirs: DirectionSet, r: Rotation) -> tuple[CapBody, DirectionSet]:
    """Apply ``r`` to every cap center and direction, keeping cap order."""
    centers = r.apply(body.centers)
    caps = tuple(Cap(UnitVector.of(c), cap.radius) for c, cap in zip(centers, body.caps))
    return CapBody(caps), DirectionSet.of(r.apply(dirs.as_array()))


