"""
polytraj-ccd

Continuous-time collision detection for quintic (minimum-jerk) trajectories
against convex obstacles, with the Monte Carlo and avoidance benchmarks built
on it.
"""

__version__ = "1.0.0"
__license__ = "MIT"

from polytraj_ccd import core
from polytraj_ccd.core import (
    BoxObstacle,
    CheckConfig,
    CollisionVerdict,
    EndConstraint,
    MovingObstacle,
    QuinticTrajectory,
    SphereObstacle,
    State,
    Vec3,
    VerdictKind,
    collision_check,
    collision_check_dynamic,
    generate,
)

__all__ = [
    "core",
    "Vec3",
    "State",
    "QuinticTrajectory",
    "EndConstraint",
    "generate",
    "SphereObstacle",
    "BoxObstacle",
    "MovingObstacle",
    "VerdictKind",
    "CollisionVerdict",
    "CheckConfig",
    "collision_check",
    "collision_check_dynamic",
]
