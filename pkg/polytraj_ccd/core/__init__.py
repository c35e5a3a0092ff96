"""
Core modules - geometry, root finding, trajectories, obstacles, collision detection
"""

from polytraj_ccd.core.geometry import Vec3, State, Plane, plane_signed_distance
from polytraj_ccd.core.rootfind import RealPolynomial, real_roots_in_interval
from polytraj_ccd.core.trajectory import (
    QuinticTrajectory,
    EndConstraint,
    InputBounds,
    InputFeasibility,
    generate,
    average_jerk_squared,
    generate_coefficients,
    average_jerk_squared_batch,
    check_input_feasibility,
    check_position_bounds,
)
from polytraj_ccd.core.obstacles import (
    ConvexObstacle,
    SphereObstacle,
    BoxObstacle,
    MovingObstacle,
    enlarge,
    relative_trajectory,
)
from polytraj_ccd.core.collision import (
    VerdictKind,
    CollisionVerdict,
    CheckConfig,
    OracleResult,
    collision_check,
    collision_check_dynamic,
    collision_check_all,
    rest_clearance_check,
    oracle_collision_check,
)

__all__ = [
    "Vec3",
    "State",
    "Plane",
    "plane_signed_distance",
    "RealPolynomial",
    "real_roots_in_interval",
    "QuinticTrajectory",
    "EndConstraint",
    "InputBounds",
    "InputFeasibility",
    "generate",
    "average_jerk_squared",
    "generate_coefficients",
    "average_jerk_squared_batch",
    "check_input_feasibility",
    "check_position_bounds",
    "ConvexObstacle",
    "SphereObstacle",
    "BoxObstacle",
    "MovingObstacle",
    "enlarge",
    "relative_trajectory",
    "VerdictKind",
    "CollisionVerdict",
    "CheckConfig",
    "OracleResult",
    "collision_check",
    "collision_check_dynamic",
    "collision_check_all",
    "rest_clearance_check",
    "oracle_collision_check",
]
