"""
Scene IO - JSON scene, trajectory and scenario files

This module is responsible for:
1. Pydantic models describing the files (strict: unknown keys are rejected)
2. Building core objects (obstacles, states, trajectories) from them
3. Loading files and turning every IO / parse / validation problem into
   ConfigurationError
"""

import json
from dataclasses import dataclass
from typing import Annotated, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from polytraj_ccd.core.errors import CCDError, ConfigurationError
from polytraj_ccd.core.geometry import State, Vec3
from polytraj_ccd.core.obstacles import (
    BoxObstacle,
    ConvexObstacle,
    MovingObstacle,
    SphereObstacle,
    enlarge,
)
from polytraj_ccd.core.trajectory import STANDARD_GRAVITY, EndConstraint, QuinticTrajectory, generate

Triple = Tuple[float, float, float]

M = TypeVar("M", bound=BaseModel)


class SphereSpec(BaseModel):
    """Sphere obstacle"""
    model_config = ConfigDict(extra="forbid")

    type: Literal["sphere"] = "sphere"
    center: Triple = Field((0.0, 0.0, 0.0), description="Centre (m)")
    radius: float = Field(..., gt=0.0, description="Radius (m)")

    def build(self) -> SphereObstacle:
        return SphereObstacle(Vec3(*self.center), self.radius)


class BoxSpec(BaseModel):
    """Oriented box obstacle; `orientation` rows or `euler` (roll, pitch, yaw in rad)"""
    model_config = ConfigDict(extra="forbid")

    type: Literal["box"] = "box"
    center: Triple = Field((0.0, 0.0, 0.0), description="Centre (m)")
    half_extents: Triple = Field(..., description="Half extents along the body axes (m)")
    orientation: Optional[Tuple[Triple, Triple, Triple]] = Field(None, description="Body axes as rows")
    euler: Optional[Triple] = Field(None, description="Z-Y-X Euler angles (rad)")

    @model_validator(mode="after")
    def _one_rotation(self):
        if self.orientation is not None and self.euler is not None:
            raise ValueError("Give either orientation or euler, not both")
        return self

    def build(self) -> BoxObstacle:
        center = Vec3(*self.center)
        half_extents = Vec3(*self.half_extents)
        if self.orientation is not None:
            return BoxObstacle(center, half_extents, tuple(Vec3(*row) for row in self.orientation))
        if self.euler is not None:
            return BoxObstacle.from_euler(center, half_extents, *self.euler)
        return BoxObstacle.axis_aligned(center, half_extents)


ShapeSpec = Annotated[Union[SphereSpec, BoxSpec], Field(discriminator="type")]


class MovingSpec(BaseModel):
    """Non-rotating shape (centred at the origin) moving along a polynomial"""
    model_config = ConfigDict(extra="forbid")

    type: Literal["moving"] = "moving"
    shape: ShapeSpec
    coeffs: List[List[float]] = Field(..., description="Per-axis ascending coefficients c0..c5 (SI, s)")

    def build(self) -> MovingObstacle:
        return MovingObstacle(self.shape.build(), tuple(tuple(axis) for axis in self.coeffs))


class ProjectileSpec(BaseModel):
    """Ballistic projectile x_p(t) = x_p(0) + v_p(0) t + g t^2 / 2 with a spherical keep-out zone"""
    model_config = ConfigDict(extra="forbid")

    type: Literal["projectile"] = "projectile"
    position: Triple
    velocity: Triple
    radius: float = Field(..., gt=0.0, description="Keep-out radius around the projectile centre (m)")
    gravity: Triple = STANDARD_GRAVITY.as_tuple()

    def build(self) -> MovingObstacle:
        return MovingObstacle.ballistic(
            SphereObstacle(Vec3.zero(), self.radius),
            Vec3(*self.position),
            Vec3(*self.velocity),
            Vec3(*self.gravity),
        )


ObstacleSpec = Annotated[
    Union[SphereSpec, BoxSpec, MovingSpec, ProjectileSpec], Field(discriminator="type")
]


class BoxRegionSpec(BaseModel):
    """Axis-aligned region given by its min and max corners"""
    model_config = ConfigDict(extra="forbid")

    min: Triple
    max: Triple

    @model_validator(mode="after")
    def _ordered(self):
        if any(lo >= hi for lo, hi in zip(self.min, self.max)):
            raise ValueError(f"min must be < max componentwise, got min={self.min}, max={self.max}")
        return self


class StateSpec(BaseModel):
    """Position, velocity and acceleration; derivatives default to zero"""
    model_config = ConfigDict(extra="forbid")

    position: Triple
    velocity: Triple = (0.0, 0.0, 0.0)
    acceleration: Triple = (0.0, 0.0, 0.0)

    def build(self) -> State:
        return State(Vec3(*self.position), Vec3(*self.velocity), Vec3(*self.acceleration))


class TrajectorySpec(BaseModel):
    """
    Quintic trajectory: either boundary states (`end`) or explicit alpha/beta/gamma
    """
    model_config = ConfigDict(extra="forbid")

    initial: StateSpec
    duration: float = Field(..., gt=0.0, description="T (s)")
    end: Optional[StateSpec] = None
    alpha: Optional[Triple] = None
    beta: Optional[Triple] = None
    gamma: Optional[Triple] = None

    @model_validator(mode="after")
    def _one_form(self):
        explicit = [self.alpha, self.beta, self.gamma]
        if self.end is None and any(v is None for v in explicit):
            raise ValueError("Trajectory needs `end` or all of alpha, beta, gamma")
        if self.end is not None and any(v is not None for v in explicit):
            raise ValueError("Give either `end` or alpha/beta/gamma, not both")
        return self

    def build(self) -> QuinticTrajectory:
        initial = self.initial.build()
        if self.end is not None:
            return generate(initial, EndConstraint.from_state(self.end.build()), self.duration)
        return QuinticTrajectory(Vec3(*self.alpha), Vec3(*self.beta), Vec3(*self.gamma), initial, self.duration)


class SceneSpec(BaseModel):
    """Workspace, vehicle radius and obstacles"""
    model_config = ConfigDict(extra="forbid")

    workspace: Optional[BoxRegionSpec] = None
    vehicle_radius: float = Field(0.0, ge=0.0, description="r_q (m)")
    obstacles: List[ObstacleSpec] = Field(default_factory=list)

    def build(self) -> "Scene":
        static, moving = [], []
        for spec in self.obstacles:
            obstacle = spec.build()
            if isinstance(obstacle, MovingObstacle):
                moving.append(obstacle)
            else:
                static.append(enlarge(obstacle, self.vehicle_radius))
        workspace = None
        if self.workspace is not None:
            workspace = (Vec3(*self.workspace.min), Vec3(*self.workspace.max))
        return Scene(workspace, self.vehicle_radius, tuple(static), tuple(moving))


class NominalSpec(BaseModel):
    """Nominal trajectory from the scenario's initial state"""
    model_config = ConfigDict(extra="forbid")

    end: StateSpec
    duration: float = Field(..., gt=0.0)


class ScenarioSpec(SceneSpec):
    """Avoidance scenario: a scene plus the vehicle's state and sampling region"""

    initial_state: StateSpec
    nominal: NominalSpec
    sample_region: BoxRegionSpec
    duration_range: Tuple[float, float] = (0.5, 2.0)
    horizon: float = Field(5.0, gt=0.0, description="Prediction horizon for moving obstacles (s)")

    @model_validator(mode="after")
    def _duration_range(self):
        lo, hi = self.duration_range
        if not 0.0 < lo <= hi:
            raise ValueError(f"duration_range must satisfy 0 < lo <= hi, got {self.duration_range}")
        return self


@dataclass(frozen=True)
class Scene:
    """
    Built scene: static obstacles are already enlarged by the vehicle radius,
    moving obstacles are enlarged at check time
    """
    workspace: Optional[Tuple[Vec3, Vec3]]
    vehicle_radius: float
    static_obstacles: Tuple[ConvexObstacle, ...]
    moving_obstacles: Tuple[MovingObstacle, ...]


def parse_model(data: dict, model: Type[M]) -> M:
    """
    Validate a decoded JSON document against `model`

    Raises:
        ConfigurationError: the document does not match the model
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid {model.__name__}: {e}") from e


def load_model(path: str, model: Type[M]) -> M:
    """
    Read a UTF-8 JSON file into `model`

    Raises:
        ConfigurationError: missing file, bad JSON or validation failure
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigurationError(f"File not found: {path}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Cannot read {path}: {e}") from e
    return parse_model(data, model)


def load_scene(path: str) -> Scene:
    try:
        return load_model(path, SceneSpec).build()
    except ConfigurationError:
        raise
    except CCDError as e:
        raise ConfigurationError(f"Invalid scene {path}: {e}") from e


def load_trajectory(path: str) -> QuinticTrajectory:
    try:
        return load_model(path, TrajectorySpec).build()
    except ConfigurationError:
        raise
    except CCDError as e:
        raise ConfigurationError(f"Invalid trajectory {path}: {e}") from e


def load_scenario(path: str) -> ScenarioSpec:
    return load_model(path, ScenarioSpec)


__all__ = [
    "SphereSpec",
    "BoxSpec",
    "MovingSpec",
    "ProjectileSpec",
    "BoxRegionSpec",
    "StateSpec",
    "TrajectorySpec",
    "SceneSpec",
    "NominalSpec",
    "ScenarioSpec",
    "Scene",
    "parse_model",
    "load_model",
    "load_scene",
    "load_trajectory",
    "load_scenario",
]
