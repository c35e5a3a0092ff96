"""
check tool - verify one trajectory against one scene
"""

import logging
from typing import Any, Dict, List, Optional

from polytraj_ccd.core.collision import (
    CheckConfig,
    VerdictKind,
    collision_check,
    collision_check_dynamic,
    oracle_collision_check,
    oracle_collision_check_dynamic,
)
from polytraj_ccd.core.trajectory import (
    InputBounds,
    InputFeasibility,
    QuinticTrajectory,
    average_jerk_squared,
    check_input_feasibility,
    check_position_bounds,
)
from polytraj_ccd.tools.scene_io import Scene

logger = logging.getLogger(__name__)


def _obstacle_entry(index: int, kind: str, verdict, oracle=None) -> Dict[str, Any]:
    entry = {
        "index": index,
        "kind": kind,
        "verdict": verdict.kind.value,
        "witness_time": verdict.witness_time,
        "sections": verdict.sections,
    }
    if oracle is not None:
        entry["oracle_hit"] = oracle.hit
        entry["oracle_time"] = oracle.time
    return entry


def check_trajectory(
    scene: Scene,
    traj: QuinticTrajectory,
    cfg: CheckConfig,
    bounds: Optional[InputBounds] = None,
    oracle_dt: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Check a trajectory against every obstacle of a scene

    Args:
        scene: Scene with static obstacles already enlarged by the vehicle radius
        traj: Trajectory to verify
        cfg: Collision-check parameters
        bounds: Input bounds; None skips input-feasibility screening
        oracle_dt: Re-verify every FEASIBLE obstacle verdict with the sampling oracle

    Returns:
        dict: status PASSED (collision-free), FAILED (collision or undecided) or
        MISMATCH (oracle contradicts a FEASIBLE verdict), with per-obstacle details
    """
    obstacles: List[Dict[str, Any]] = []
    mismatches = 0

    for index, obstacle in enumerate(scene.static_obstacles):
        verdict = collision_check(traj, obstacle, cfg)
        oracle = None
        if oracle_dt is not None and verdict.is_feasible:
            oracle = oracle_collision_check(traj, obstacle, oracle_dt)
            mismatches += int(oracle.hit)
        obstacles.append(_obstacle_entry(index, type(obstacle).__name__, verdict, oracle))

    offset = len(scene.static_obstacles)
    for index, moving in enumerate(scene.moving_obstacles, start=offset):
        verdict = collision_check_dynamic(traj, moving, scene.vehicle_radius, cfg)
        oracle = None
        if oracle_dt is not None and verdict.is_feasible:
            oracle = oracle_collision_check_dynamic(traj, moving, scene.vehicle_radius, oracle_dt)
            mismatches += int(oracle.hit)
        obstacles.append(_obstacle_entry(index, "MovingObstacle", verdict, oracle))

    kinds = {entry["verdict"] for entry in obstacles}
    if VerdictKind.INFEASIBLE.value in kinds:
        verdict = VerdictKind.INFEASIBLE
    elif VerdictKind.INDETERMINABLE.value in kinds:
        verdict = VerdictKind.INDETERMINABLE
    else:
        verdict = VerdictKind.FEASIBLE

    result: Dict[str, Any] = {
        "status": "PASSED" if verdict == VerdictKind.FEASIBLE else "FAILED",
        "verdict": verdict.value,
        "duration": traj.duration,
        "average_jerk_squared": average_jerk_squared(traj),
        "obstacles": obstacles,
    }
    if scene.workspace is not None:
        result["inside_workspace"] = check_position_bounds(traj, *scene.workspace)
    if bounds is not None:
        result["input_feasibility"] = check_input_feasibility(traj, bounds).value
    if oracle_dt is not None:
        result["oracle_dt"] = oracle_dt
        result["mismatches"] = mismatches
        if mismatches:
            result["status"] = "MISMATCH"
            logger.error("Sampling oracle contradicts %d FEASIBLE verdict(s)", mismatches)

    logger.info("Checked trajectory against %d obstacle(s): %s", len(obstacles), verdict.value)
    return result


def is_input_feasible(traj: QuinticTrajectory, bounds: InputBounds) -> bool:
    return check_input_feasibility(traj, bounds) == InputFeasibility.FEASIBLE


def oracle_scene_hit(scene: Scene, traj: QuinticTrajectory, dt: float) -> bool:
    """
    True iff the sampling oracle finds the trajectory inside any obstacle of the scene
    """
    if any(oracle_collision_check(traj, obstacle, dt).hit for obstacle in scene.static_obstacles):
        return True
    return any(
        oracle_collision_check_dynamic(traj, moving, scene.vehicle_radius, dt).hit
        for moving in scene.moving_obstacles
    )


__all__ = ["check_trajectory", "is_input_feasible", "oracle_scene_hit"]
