"""
Geometry Core - vector, state and plane value types

This module is responsible for:
1. Vec3, the 3-component inertial-frame vector used for positions,
   velocities, accelerations and jerks
2. State, a (position, velocity, acceleration) triple
3. Plane, a half-space boundary defined by a point and a unit normal

All types are immutable and safe to share between threads and processes.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

import numpy as np

from .errors import DegeneratePlaneError, InvalidArgumentError

# Planes with a shorter normal than this have no usable direction
PLANE_NORMAL_MIN_NORM = 1e-9


@dataclass(frozen=True)
class Vec3:
    """
    Inertial-frame 3-vector (m, m/s, m/s^2 or m/s^3 depending on context)
    """
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise InvalidArgumentError(f"Vec3 components must be finite: ({self.x}, {self.y}, {self.z})")

    @classmethod
    def zero(cls) -> "Vec3":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_iterable(cls, values: Iterable[float]) -> "Vec3":
        """
        Build a Vec3 from any 3-element iterable (list, tuple, ndarray)

        Args:
            values: Exactly three numbers

        Returns:
            Vec3: The vector
        """
        items = [float(v) for v in values]
        if len(items) != 3:
            raise InvalidArgumentError(f"Vec3 needs exactly 3 components, got {len(items)}")
        return cls(items[0], items[1], items[2])

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y
        yield self.z

    def __getitem__(self, axis: int) -> float:
        return (self.x, self.y, self.z)[axis]

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, scale: float) -> "Vec3":
        return Vec3(self.x * scale, self.y * scale, self.z * scale)

    __rmul__ = __mul__

    def __truediv__(self, scale: float) -> "Vec3":
        return Vec3(self.x / scale, self.y / scale, self.z / scale)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm_squared(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)


@dataclass(frozen=True)
class State:
    """
    Position (m), velocity (m/s) and acceleration (m/s^2) of the vehicle
    """
    position: Vec3
    velocity: Vec3
    acceleration: Vec3

    @classmethod
    def at_rest(cls, position: Vec3) -> "State":
        """
        State with zero velocity and zero acceleration at `position`
        """
        return cls(position, Vec3.zero(), Vec3.zero())


@dataclass(frozen=True)
class Plane:
    """
    Plane through `point` (p) with unit `normal` (n)

    The constructor normalizes near-unit normals and rejects normals shorter
    than PLANE_NORMAL_MIN_NORM.
    """
    point: Vec3
    normal: Vec3

    def __post_init__(self):
        length = self.normal.norm()
        if length < PLANE_NORMAL_MIN_NORM:
            raise DegeneratePlaneError(f"Plane normal is degenerate (norm={length:.3e})")
        if abs(length - 1.0) > 1e-15:
            object.__setattr__(self, "normal", self.normal / length)

    def signed_distance(self, q: Vec3) -> float:
        """
        Signed distance n^T (q - p); positive on the side the normal points to
        """
        n = self.normal
        p = self.point
        return n.x * (q.x - p.x) + n.y * (q.y - p.y) + n.z * (q.z - p.z)


def plane_signed_distance(plane: Plane, q: Vec3) -> float:
    """
    Signed distance of `q` from `plane`

    Args:
        plane: Separating plane
        q: Query point (m)

    Returns:
        float: n^T (q - p) in meters, positive on the normal side
    """
    return plane.signed_distance(q)


__all__ = [
    "PLANE_NORMAL_MIN_NORM",
    "Vec3",
    "State",
    "Plane",
    "plane_signed_distance",
]
