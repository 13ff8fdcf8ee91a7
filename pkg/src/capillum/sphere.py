"""Points, caps and rotations on the unit sphere S^2.

All angles are radians. Bulk operations work on ``(n, 3)`` numpy arrays;
:class:`UnitVector`, :class:`Cap` and :class:`Rotation` are small immutable
value types for the scalar API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import RadiusOutOfRange

NORM_TOL = 1e-12


@dataclass(frozen=True)
class UnitVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if not n > 0 or not math.isfinite(n):
            raise ValueError(f"cannot normalize vector ({self.x}, {self.y}, {self.z})")
        if n != 1.0:
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @classmethod
    def of(cls, v: Iterable[float]) -> "UnitVector":
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __neg__(self) -> "UnitVector":
        return UnitVector(-self.x, -self.y, -self.z)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def dot(self, other: "UnitVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


@dataclass(frozen=True)
class Cap:
    """Spherical cap of angular radius ``radius`` around ``center``.

    ``closed=True`` is C[center, radius], ``closed=False`` the open cap.
    """

    center: UnitVector
    radius: float
    closed: bool = True

    def __post_init__(self):
        if not (0.0 < self.radius <= math.pi):
            raise RadiusOutOfRange(f"cap radius must lie in (0, pi], got {self.radius!r}")


def _clamp(c: float) -> float:
    return -1.0 if c < -1.0 else 1.0 if c > 1.0 else c


def geodesic_distance(x: UnitVector, y: UnitVector) -> float:
    return math.acos(_clamp(x.dot(y)))


def cap_contains(c: Cap, p: UnitVector) -> bool:
    d = c.center.dot(p)
    cr = math.cos(c.radius)
    return d >= cr if c.closed else d > cr


def cap_measure(radius: float) -> float:
    """Normalized surface measure (1 - cos r)/2 of a cap of radius ``r``."""
    if not (0.0 <= radius <= math.pi):
        raise ValueError(f"radius must lie in [0, pi], got {radius!r}")
    return (1.0 - math.cos(radius)) / 2.0


_TETRA = np.array(
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
) / math.sqrt(3.0)


def tetrahedron_array() -> np.ndarray:
    """Vertices of the canonical inscribed regular tetrahedron, shape (4, 3)."""
    return _TETRA.copy()


def tetrahedron() -> list[UnitVector]:
    return [UnitVector.of(v) for v in _TETRA]


def sample_sphere(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` uniform points on S^2 as an (n, 3) array (normalized Gaussians)."""
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@dataclass(frozen=True)
class Rotation:
    """Rotation stored as a unit quaternion ``(w, x, y, z)``."""

    q: tuple[float, float, float, float]

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        n = float(np.linalg.norm(q))
        if not n > 0:
            raise ValueError("zero quaternion")
        object.__setattr__(self, "q", tuple(float(c) for c in q / n))

    @classmethod
    def identity(cls) -> "Rotation":
        return cls((1.0, 0.0, 0.0, 0.0))

    def matrix(self) -> np.ndarray:
        return quaternions_to_matrices(np.array([self.q]))[0]

    def inverse(self) -> "Rotation":
        w, x, y, z = self.q
        return Rotation((w, -x, -y, -z))

    def compose(self, other: "Rotation") -> "Rotation":
        """Rotation applying ``other`` first, then ``self``."""
        a1, b1, c1, d1 = self.q
        a2, b2, c2, d2 = other.q
        return Rotation((
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Rotate an (n, 3) array of points."""
        return np.asarray(points, dtype=float) @ self.matrix().T


def quaternions_to_matrices(q: np.ndarray) -> np.ndarray:
    """Convert an (n, 4) array of unit quaternions to (n, 3, 3) rotation matrices."""
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    m = np.empty((q.shape[0], 3, 3))
    m[:, 0, 0] = 1 - 2 * (y * y + z * z)
    m[:, 0, 1] = 2 * (x * y - w * z)
    m[:, 0, 2] = 2 * (x * z + w * y)
    m[:, 1, 0] = 2 * (x * y + w * z)
    m[:, 1, 1] = 1 - 2 * (x * x + z * z)
    m[:, 1, 2] = 2 * (y * z - w * x)
    m[:, 2, 0] = 2 * (x * z - w * y)
    m[:, 2, 1] = 2 * (y * z + w * x)
    m[:, 2, 2] = 1 - 2 * (x * x + y * y)
    return m


def random_quaternions(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed rotations as (n, 4) unit quaternions."""
    g = rng.standard_normal((n, 4))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def random_rotation(rng: np.random.Generator) -> Rotation:
    return Rotation(tuple(random_quaternions(rng, 1)[0]))


def rotate(r: Rotation, p: UnitVector) -> UnitVector:
    return UnitVector.of(r.matrix() @ p.as_array())


def as_points(vectors: Sequence[UnitVector] | np.ndarray) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        return vectors.reshape(-1, 3).astype(float)
    return np.array([[v.x, v.y, v.z] for v in vectors], dtype=float).reshape(-1, 3)
