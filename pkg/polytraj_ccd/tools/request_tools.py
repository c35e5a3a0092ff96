"""
Request tools - the operations the server exposes

Every tool takes the server context (check parameters, input bounds, oracle
step) and a JSON payload, and returns a JSON-ready dict.
"""

from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field

from polytraj_ccd.core.trajectory import (
    EndConstraint,
    average_jerk_squared,
    check_input_feasibility,
    generate as generate_trajectory,
)
from polytraj_ccd.tools.check_scene import check_trajectory
from polytraj_ccd.tools.scene_io import SceneSpec, StateSpec, TrajectorySpec, parse_model


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scene: SceneSpec
    trajectory: TrajectorySpec
    validate_oracle: bool = Field(False, alias="validate", description="Re-verify with the sampling oracle")


class GenerateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    initial: StateSpec
    end: StateSpec
    duration: float = Field(..., gt=0.0)


class FeasibilityRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trajectory: TrajectorySpec


def check(context: Dict[str, Any], payload: Dict[str, Any]) -> Dict[str, Any]:
    """
    Collision-check a trajectory against a scene

    Args:
        context: Server context with cfg, bounds and oracle_dt
        payload: {"scene": {...}, "trajectory": {...}, "validate": bool}

    Returns:
        dict: check_trajectory() result
    """
    request = parse_model(payload, CheckRequest)
    oracle_dt = context["oracle_dt"] if request.validate_oracle else None
    return check_trajectory(
        request.scene.build(), request.trajectory.build(), context["cfg"], context["bounds"], oracle_dt
    )


def generate(context: Dict[str, Any], payload: Dict[str, Any]) -> Dict[str, Any]:
    """
    Minimum-average-jerk trajectory between two full states
    """
    request = parse_model(payload, GenerateRequest)
    traj = generate_trajectory(
        request.initial.build(), EndConstraint.from_state(request.end.build()), request.duration
    )
    return {
        "alpha": traj.alpha.as_tuple(),
        "beta": traj.beta.as_tuple(),
        "gamma": traj.gamma.as_tuple(),
        "duration": traj.duration,
        "average_jerk_squared": average_jerk_squared(traj),
    }


def input_feasibility(context: Dict[str, Any], payload: Dict[str, Any]) -> Dict[str, Any]:
    request = parse_model(payload, FeasibilityRequest)
    verdict = check_input_feasibility(request.trajectory.build(), context["bounds"])
    return {"input_feasibility": verdict.value}


__all__ = ["check", "generate", "input_feasibility"]
