"""
Collision - continuous-time collision detection for quintic trajectories

This module is responsible for:
1. collision_check(): recursive separating-plane check of one trajectory
   against one convex obstacle, returning Feasible / Infeasible /
   Indeterminable
2. collision_check_dynamic(): the same check against a moving, non-rotating
   obstacle through the relative trajectory
3. collision_check_all() and rest_clearance_check() used by the planners
4. oracle_collision_check(): dense time-sampling reference used for validation

How a section [t_s, t_f] is checked:
- x(t_split) at the midpoint is tested for membership
- a plane separating x(t_split) from the obstacle is built
- the distance d(t) to that plane is a quintic; its critical points are the
  real roots of the quartic d'(t) plus the section endpoints
- between consecutive critical points d is monotone, so if d > 0 at every
  critical point on one side of t_split that side cannot touch the obstacle;
  otherwise the unresolved part is checked recursively
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import DegenerateNormalError, DegeneratePolynomialError, InvalidArgumentError
from .geometry import Vec3
from .obstacles import ConvexObstacle, MovingObstacle, enlarge, relative_trajectory
from .rootfind import RealPolynomial, real_roots_in_interval
from .trajectory import QuinticTrajectory

logger = logging.getLogger(__name__)

# critical points closer than this (s) to t_split or a section end are dropped
CRITICAL_POINT_TOL = 1e-9
DEPTH_SLACK = 2


class VerdictKind(str, Enum):
    """
    Outcome of a collision check
    """
    FEASIBLE = "FEASIBLE"              # certified collision-free
    INFEASIBLE = "INFEASIBLE"          # a point of the trajectory is inside the obstacle
    INDETERMINABLE = "INDETERMINABLE"  # could not be certified within t_min


@dataclass(frozen=True)
class CollisionVerdict:
    """
    Collision-check result

    `witness_time` is set for INFEASIBLE verdicts and is a time at which the
    trajectory point is inside the obstacle. `sections` counts the
    check_section invocations that produced the verdict.
    """
    kind: VerdictKind
    witness_time: Optional[float] = None
    sections: int = 0

    @property
    def is_feasible(self) -> bool:
        return self.kind == VerdictKind.FEASIBLE

    @property
    def is_infeasible(self) -> bool:
        return self.kind == VerdictKind.INFEASIBLE

    @property
    def is_indeterminable(self) -> bool:
        return self.kind == VerdictKind.INDETERMINABLE


class CheckConfig(BaseModel):
    """
    Collision-check parameters
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    t_min: float = Field(
        0.002,
        gt=0.0,
        description="Minimum section length (s); shorter sections return INDETERMINABLE",
    )
    max_recursion_depth: int = Field(
        64,
        ge=1,
        description="Recursion backstop; exceeding it returns INDETERMINABLE",
    )

    def required_depth(self, duration: float) -> int:
        """
        Depth the t_min halving can reach on a trajectory of `duration`
        """
        return max(0, math.ceil(math.log2(max(duration / self.t_min, 1.0)))) + DEPTH_SLACK


@dataclass(frozen=True)
class OracleResult:
    """
    Sampling-oracle result: `hit` with the first sampled time inside, or clear
    """
    hit: bool
    time: Optional[float] = None


class _SectionChecker:
    """
    One top-level collision check; holds the trajectory, obstacle and the
    instrumented section counter
    """

    def __init__(self, traj: QuinticTrajectory, obstacle: ConvexObstacle, cfg: CheckConfig):
        self.traj = traj
        self.obstacle = obstacle
        self.t_min = cfg.t_min
        self.max_depth = cfg.max_recursion_depth
        self.coefficients = traj.position_coefficients()
        self.sections = 0

    def _verdict(self, kind: VerdictKind, witness: Optional[float] = None) -> CollisionVerdict:
        return CollisionVerdict(kind, witness, self.sections)

    def _distance_polynomial(self, point: Vec3, normal: Vec3) -> List[float]:
        cx, cy, cz = self.coefficients
        nx, ny, nz = normal.x, normal.y, normal.z
        d = [nx * cx[k] + ny * cy[k] + nz * cz[k] for k in range(6)]
        d[0] -= normal.dot(point)
        return d

    @staticmethod
    def _value(d: Sequence[float], t: float) -> float:
        return ((((d[5] * t + d[4]) * t + d[3]) * t + d[2]) * t + d[1]) * t + d[0]

    def check_section(self, t_s: float, t_f: float, depth: int) -> CollisionVerdict:
        self.sections += 1
        if depth > self.max_depth:
            return self._verdict(VerdictKind.INDETERMINABLE)

        t_split = 0.5 * (t_s + t_f)
        q = self.traj.position(t_split)
        if self.obstacle.contains(q):
            return self._verdict(VerdictKind.INFEASIBLE, t_split)
        if t_f - t_s < self.t_min:
            return self._verdict(VerdictKind.INDETERMINABLE)

        try:
            plane = self.obstacle.separating_plane(q)
        except DegenerateNormalError:
            return self._verdict(VerdictKind.INDETERMINABLE)

        d = self._distance_polynomial(plane.point, plane.normal)
        rate = RealPolynomial((d[1], 2.0 * d[2], 3.0 * d[3], 4.0 * d[4], 5.0 * d[5]))
        try:
            roots = real_roots_in_interval(rate, t_s, t_f)
        except DegeneratePolynomialError:
            # d(t) is constant and d(t_split) > 0 by construction of the plane
            roots = []

        after = [
            t for t in roots
            if t_split + CRITICAL_POINT_TOL < t < t_f - CRITICAL_POINT_TOL
        ]
        after.append(t_f)
        previous = t_split
        for t_i in after:
            if self._value(d, t_i) <= 0.0:
                result = self.check_section(previous, t_f, depth + 1)
                if result.is_feasible:
                    break
                return result
            previous = t_i

        before = [
            t for t in reversed(roots)
            if t_s + CRITICAL_POINT_TOL < t < t_split - CRITICAL_POINT_TOL
        ]
        before.append(t_s)
        previous = t_split
        for t_i in before:
            if self._value(d, t_i) <= 0.0:
                return self.check_section(t_s, previous, depth + 1)
            previous = t_i

        return self._verdict(VerdictKind.FEASIBLE)


def collision_check(traj: QuinticTrajectory, obstacle: ConvexObstacle, cfg: CheckConfig) -> CollisionVerdict:
    """
    Check a quintic trajectory against one static convex obstacle

    Args:
        traj: Candidate trajectory
        obstacle: Convex obstacle, already enlarged by the vehicle radius
        cfg: t_min and recursion backstop

    Returns:
        CollisionVerdict: FEASIBLE, INFEASIBLE (with witness) or INDETERMINABLE

    Raises:
        InvalidArgumentError: cfg.max_recursion_depth cannot reach t_min on this trajectory
    """
    if cfg.max_recursion_depth < cfg.required_depth(traj.duration):
        raise InvalidArgumentError(
            f"max_recursion_depth={cfg.max_recursion_depth} is below the "
            f"{cfg.required_depth(traj.duration)} levels needed for T={traj.duration} s, t_min={cfg.t_min} s"
        )
    if obstacle.contains(traj.initial.position):
        return CollisionVerdict(VerdictKind.INFEASIBLE, 0.0, 0)
    if obstacle.contains(traj.position(traj.duration)):
        return CollisionVerdict(VerdictKind.INFEASIBLE, traj.duration, 0)

    checker = _SectionChecker(traj, obstacle, cfg)
    return checker.check_section(0.0, traj.duration, 1)


def collision_check_dynamic(
    traj: QuinticTrajectory, moving: MovingObstacle, r_q: float, cfg: CheckConfig
) -> CollisionVerdict:
    """
    Check a trajectory against a moving obstacle with a non-rotating boundary

    The relative trajectory x(t) - x_O(t) is checked against the obstacle
    shape centred at the origin and enlarged by r_q.
    """
    return collision_check(relative_trajectory(traj, moving), enlarge(moving.shape, r_q), cfg)


def collision_check_all(
    traj: QuinticTrajectory,
    static_obstacles: Sequence[ConvexObstacle],
    moving_obstacles: Sequence[MovingObstacle],
    r_q: float,
    cfg: CheckConfig,
) -> CollisionVerdict:
    """
    Check a trajectory against every obstacle of a scene

    Static obstacles are expected to be enlarged by r_q already. Returns the
    first INFEASIBLE verdict; otherwise INDETERMINABLE if any obstacle was
    indeterminable; otherwise FEASIBLE.
    """
    sections = 0
    undecided = None
    for obstacle in static_obstacles:
        verdict = collision_check(traj, obstacle, cfg)
        sections += verdict.sections
        if verdict.is_infeasible:
            return CollisionVerdict(verdict.kind, verdict.witness_time, sections)
        if verdict.is_indeterminable:
            undecided = verdict
    for moving in moving_obstacles:
        verdict = collision_check_dynamic(traj, moving, r_q, cfg)
        sections += verdict.sections
        if verdict.is_infeasible:
            return CollisionVerdict(verdict.kind, verdict.witness_time, sections)
        if verdict.is_indeterminable:
            undecided = verdict
    if undecided is not None:
        return CollisionVerdict(VerdictKind.INDETERMINABLE, None, sections)
    return CollisionVerdict(VerdictKind.FEASIBLE, None, sections)


def rest_clearance_check(
    end_position: Vec3,
    moving: MovingObstacle,
    r_q: float,
    t_start: float,
    horizon: float,
    cfg: CheckConfig,
) -> CollisionVerdict:
    """
    Check that a vehicle resting at `end_position` from `t_start` to `horizon`
    stays clear of a moving obstacle

    Witness times are measured from `t_start`. A horizon that ends before
    `t_start` leaves nothing to check and is FEASIBLE.
    """
    remaining = horizon - t_start
    if remaining <= 0.0:
        return CollisionVerdict(VerdictKind.FEASIBLE)
    hover = QuinticTrajectory.hover(end_position, remaining)
    return collision_check_dynamic(hover, moving.shifted(t_start), r_q, cfg)


def oracle_sample_times(duration: float, dt: float) -> np.ndarray:
    """
    0, dt, 2 dt, ... up to and including `duration`
    """
    count = int(math.floor(duration / dt))
    times = np.arange(count + 1, dtype=np.float64) * dt
    if times[-1] < duration:
        times = np.append(times, duration)
    return times


def oracle_collision_check(traj: QuinticTrajectory, obstacle: ConvexObstacle, dt: float) -> OracleResult:
    """
    Dense time-sampling reference check

    Samples t = 0, dt, 2 dt, ..., T and reports the first sample inside the
    obstacle. Misses crossings shorter than dt.

    Raises:
        InvalidArgumentError: dt <= 0
    """
    if not dt > 0.0:
        raise InvalidArgumentError(f"Oracle step must be > 0, got {dt}")
    times = oracle_sample_times(traj.duration, dt)
    inside = obstacle.contains_points(traj.sample(times))
    hits = np.flatnonzero(inside)
    if hits.size == 0:
        return OracleResult(hit=False)
    return OracleResult(hit=True, time=float(times[hits[0]]))


def oracle_collision_check_dynamic(
    traj: QuinticTrajectory, moving: MovingObstacle, r_q: float, dt: float
) -> OracleResult:
    """
    Sampling oracle applied to the relative trajectory
    """
    return oracle_collision_check(relative_trajectory(traj, moving), enlarge(moving.shape, r_q), dt)


__all__ = [
    "VerdictKind",
    "CollisionVerdict",
    "CheckConfig",
    "OracleResult",
    "collision_check",
    "collision_check_dynamic",
    "collision_check_all",
    "rest_clearance_check",
    "oracle_sample_times",
    "oracle_collision_check",
    "oracle_collision_check_dynamic",
]
