"""
Obstacles - convex obstacle shapes

This module is responsible for:
1. The ConvexObstacle capability: point membership and separating-plane
   construction (the two properties the collision checker relies on)
2. Sphere and oriented box shapes
3. Enlarging obstacles by the vehicle's bounding-sphere radius
4. Moving obstacles with non-rotating boundaries whose centre follows a
   polynomial of degree <= 5, and the relative trajectory that reduces a
   dynamic check to a static one

Membership is closed: boundary points count as inside.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import DegenerateNormalError, InvalidArgumentError, PreconditionViolationError
from .geometry import Plane, Vec3
from .trajectory import STANDARD_GRAVITY, QuinticTrajectory

# Exterior points closer than this (m) to the boundary have no reliable normal
BOUNDARY_TOL = 1e-12
ORTHONORMAL_TOL = 1e-9
MAX_CENTER_DEGREE = 5


class ConvexObstacle(ABC):
    """
    Closed convex region supporting membership and separating planes

    Concrete shapes expose a `center` reference point (m).
    """

    center: Vec3

    @abstractmethod
    def contains(self, q: Vec3) -> bool:
        """True iff q lies in the closed region"""

    @abstractmethod
    def contains_points(self, points: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (N, 3) array"""

    @abstractmethod
    def closest_point(self, q: Vec3) -> Vec3:
        """Point of the region nearest to q"""

    @abstractmethod
    def enlarged(self, margin: float) -> "ConvexObstacle":
        """Shape grown by `margin` in every direction"""

    @abstractmethod
    def translated(self, offset: Vec3) -> "ConvexObstacle":
        """Same shape moved by `offset`"""

    def distance(self, q: Vec3) -> float:
        """
        Euclidean distance from q to the region (0 inside)
        """
        if self.contains(q):
            return 0.0
        return (q - self.closest_point(q)).norm()

    def separating_plane(self, q: Vec3) -> Plane:
        """
        Plane touching the obstacle at its closest point to q, normal pointing to q

        Args:
            q: Exterior query point

        Returns:
            Plane: p = closest point of the region, n = (q - p) / ||q - p||

        Raises:
            PreconditionViolationError: q is inside the obstacle
            DegenerateNormalError: q is within BOUNDARY_TOL of the boundary
        """
        if self.contains(q):
            raise PreconditionViolationError("Separating plane requested for a point inside the obstacle")
        p = self.closest_point(q)
        diff = q - p
        gap = diff.norm()
        if gap <= BOUNDARY_TOL:
            raise DegenerateNormalError(f"Query point is {gap:.3e} m from the obstacle boundary")
        return Plane(p, diff / gap)


@dataclass(frozen=True)
class SphereObstacle(ConvexObstacle):
    """
    Ball of `radius` (m) around `center`
    """
    center: Vec3
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise InvalidArgumentError(f"Sphere radius must be > 0, got {self.radius}")

    def contains(self, q: Vec3) -> bool:
        c = self.center
        dx, dy, dz = q.x - c.x, q.y - c.y, q.z - c.z
        return dx * dx + dy * dy + dz * dz <= self.radius * self.radius

    def contains_points(self, points: np.ndarray) -> np.ndarray:
        offset = points - self.center.to_array()
        return np.einsum("ij,ij->i", offset, offset) <= self.radius * self.radius

    def closest_point(self, q: Vec3) -> Vec3:
        offset = q - self.center
        length = offset.norm()
        if length <= self.radius:
            return q
        return self.center + offset * (self.radius / length)

    def enlarged(self, margin: float) -> "SphereObstacle":
        return SphereObstacle(self.center, self.radius + margin)

    def translated(self, offset: Vec3) -> "SphereObstacle":
        return SphereObstacle(self.center + offset, self.radius)


_IDENTITY_AXES = (Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0))


@dataclass(frozen=True)
class BoxObstacle(ConvexObstacle):
    """
    Oriented box (rectangular prism)

    `orientation` holds the body axes as rows (unit vectors in the inertial
    frame); `half_extents` are measured along those axes.
    """
    center: Vec3
    half_extents: Vec3
    orientation: Tuple[Vec3, Vec3, Vec3] = _IDENTITY_AXES

    def __post_init__(self):
        if min(self.half_extents) <= 0.0:
            raise InvalidArgumentError(f"Box half extents must be > 0, got {self.half_extents.as_tuple()}")
        if len(self.orientation) != 3:
            raise InvalidArgumentError("Box orientation needs 3 axes")
        rows = self.rotation_matrix()
        if not np.allclose(rows @ rows.T, np.eye(3), rtol=0.0, atol=ORTHONORMAL_TOL):
            raise InvalidArgumentError("Box orientation is not orthonormal")

    @classmethod
    def axis_aligned(cls, center: Vec3, half_extents: Vec3) -> "BoxObstacle":
        return cls(center, half_extents)

    @classmethod
    def from_euler(
        cls, center: Vec3, half_extents: Vec3, roll: float = 0.0, pitch: float = 0.0, yaw: float = 0.0
    ) -> "BoxObstacle":
        """
        Box whose body frame is rotated by Z-Y-X Euler angles (rad) from the inertial frame
        """
        cr, sr = math.cos(roll), math.sin(roll)
        cp, sp = math.cos(pitch), math.sin(pitch)
        cy, sy = math.cos(yaw), math.sin(yaw)
        rz = np.array([[cy, -sy, 0.0], [sy, cy, 0.0], [0.0, 0.0, 1.0]])
        ry = np.array([[cp, 0.0, sp], [0.0, 1.0, 0.0], [-sp, 0.0, cp]])
        rx = np.array([[1.0, 0.0, 0.0], [0.0, cr, -sr], [0.0, sr, cr]])
        body_to_world = rz @ ry @ rx
        axes = tuple(Vec3.from_iterable(column) for column in body_to_world.T)
        return cls(center, half_extents, axes)

    def rotation_matrix(self) -> np.ndarray:
        return np.array([axis.as_tuple() for axis in self.orientation], dtype=np.float64)

    def _local(self, q: Vec3) -> Tuple[float, float, float]:
        c = self.center
        dx, dy, dz = q.x - c.x, q.y - c.y, q.z - c.z
        u, v, w = self.orientation
        return (
            u.x * dx + u.y * dy + u.z * dz,
            v.x * dx + v.y * dy + v.z * dz,
            w.x * dx + w.y * dy + w.z * dz,
        )

    def contains(self, q: Vec3) -> bool:
        lx, ly, lz = self._local(q)
        h = self.half_extents
        return abs(lx) <= h.x and abs(ly) <= h.y and abs(lz) <= h.z

    def contains_points(self, points: np.ndarray) -> np.ndarray:
        local = (points - self.center.to_array()) @ self.rotation_matrix().T
        return np.all(np.abs(local) <= self.half_extents.to_array(), axis=1)

    def closest_point(self, q: Vec3) -> Vec3:
        local = self._local(q)
        h = self.half_extents
        clamped = [min(max(local[i], -h[i]), h[i]) for i in range(3)]
        u, v, w = self.orientation
        return self.center + u * clamped[0] + v * clamped[1] + w * clamped[2]

    def vertices(self) -> Tuple[Vec3, ...]:
        u, v, w = self.orientation
        h = self.half_extents
        return tuple(
            self.center + u * (sx * h.x) + v * (sy * h.y) + w * (sz * h.z)
            for sx in (-1.0, 1.0) for sy in (-1.0, 1.0) for sz in (-1.0, 1.0)
        )

    def enlarged(self, margin: float) -> "BoxObstacle":
        # conservative box, not the rounded Minkowski sum
        h = self.half_extents
        return BoxObstacle(self.center, Vec3(h.x + margin, h.y + margin, h.z + margin), self.orientation)

    def translated(self, offset: Vec3) -> "BoxObstacle":
        return BoxObstacle(self.center + offset, self.half_extents, self.orientation)


def _pad_axis(coeffs: Sequence[float]) -> Tuple[float, ...]:
    axis = tuple(float(c) for c in coeffs)
    if len(axis) > MAX_CENTER_DEGREE + 1:
        raise InvalidArgumentError(
            f"Moving obstacle centre polynomial degree must be <= {MAX_CENTER_DEGREE}, got {len(axis) - 1}"
        )
    if not all(math.isfinite(c) for c in axis):
        raise InvalidArgumentError(f"Centre polynomial coefficients must be finite: {axis}")
    return axis + (0.0,) * (MAX_CENTER_DEGREE + 1 - len(axis))


@dataclass(frozen=True)
class MovingObstacle:
    """
    Non-rotating convex shape whose centre follows x_O(t)

    `shape` is expressed around the origin; `coefficients` are per-axis
    ascending monomial coefficients (SI units, seconds), degree <= 5.
    """
    shape: ConvexObstacle
    coefficients: Tuple[Tuple[float, ...], Tuple[float, ...], Tuple[float, ...]]

    def __post_init__(self):
        if len(self.coefficients) != 3:
            raise InvalidArgumentError("Moving obstacle needs centre coefficients for 3 axes")
        if self.shape.center.norm() > BOUNDARY_TOL:
            raise InvalidArgumentError("Moving obstacle shape must be centred at the origin")
        object.__setattr__(self, "coefficients", tuple(_pad_axis(axis) for axis in self.coefficients))

    @classmethod
    def ballistic(
        cls, shape: ConvexObstacle, position: Vec3, velocity: Vec3, gravity: Vec3 = STANDARD_GRAVITY
    ) -> "MovingObstacle":
        """
        Projectile prediction x_p(t) = x_p(0) + v_p(0) t + g t^2 / 2
        """
        return cls(
            shape,
            tuple((position[i], velocity[i], 0.5 * gravity[i]) for i in range(3)),
        )

    def center_at(self, t: float) -> Vec3:
        values = []
        for axis in self.coefficients:
            value = 0.0
            for c in reversed(axis):
                value = value * t + c
            values.append(value)
        return Vec3(*values)

    def shifted(self, dt: float) -> "MovingObstacle":
        """
        Same obstacle with time origin moved to `dt`: centre polynomial x_O(t + dt)
        """
        shifted = []
        for axis in self.coefficients:
            shifted.append(tuple(
                sum(axis[j] * math.comb(j, k) * dt ** (j - k) for j in range(k, len(axis)))
                for k in range(len(axis))
            ))
        return MovingObstacle(self.shape, tuple(shifted))


def enlarge(obstacle: ConvexObstacle, r_q: float) -> ConvexObstacle:
    """
    Grow `obstacle` by the vehicle radius `r_q` in every direction

    Args:
        obstacle: Sphere or box
        r_q: Vehicle bounding-sphere radius (m), >= 0

    Returns:
        ConvexObstacle: Enlarged obstacle (the same object for r_q == 0)

    Raises:
        InvalidArgumentError: r_q < 0
    """
    if not (math.isfinite(r_q) and r_q >= 0.0):
        raise InvalidArgumentError(f"Enlargement radius must be >= 0, got {r_q}")
    if r_q == 0.0:
        return obstacle
    return obstacle.enlarged(r_q)


def relative_trajectory(traj: QuinticTrajectory, moving: MovingObstacle) -> QuinticTrajectory:
    """
    Relative trajectory x(t) - x_O(t), coefficient by coefficient

    Checking it against moving.shape (centred at the origin, enlarged by r_q)
    is equivalent to checking `traj` against the moving obstacle.
    """
    diff = tuple(
        tuple(a - b for a, b in zip(own, other))
        for own, other in zip(traj.position_coefficients(), moving.coefficients)
    )
    return QuinticTrajectory.from_position_coefficients(diff, traj.duration)


__all__ = [
    "BOUNDARY_TOL",
    "ConvexObstacle",
    "SphereObstacle",
    "BoxObstacle",
    "MovingObstacle",
    "enlarge",
    "relative_trajectory",
]
