"""
Trajectory - minimum-average-jerk quintic trajectories

This module is responsible for:
1. QuinticTrajectory: x(t) = alpha/120 t^5 + beta/24 t^4 + gamma/6 t^3
   + a0/2 t^2 + v0 t + x0 on [0, T], with its first three derivatives
2. generate(): boundary-value inversion from an initial state, a fully
   constrained end state and a duration
3. average_jerk_squared(): the closed-form cost used to rank candidates
4. check_input_feasibility(): conservative thrust / body-rate screening
5. check_position_bounds(): exact axis-aligned box containment
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DegeneratePolynomialError, InvalidArgumentError, InvalidDurationError
from .geometry import State, Vec3
from .rootfind import RealPolynomial, real_roots_in_interval

AxisCoefficients = Tuple[float, ...]

# Input-feasibility grid: at least this many intervals, and no wider than FEASIBILITY_GRID_STEP
FEASIBILITY_MIN_INTERVALS = 32
FEASIBILITY_GRID_STEP = 0.01
FEASIBILITY_MARGIN = 0.02

STANDARD_GRAVITY = Vec3(0.0, 0.0, -9.81)


class InputFeasibility(str, Enum):
    """
    Result of the thrust / body-rate screening
    """
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"


def _derivative(coeffs: Sequence[float]) -> AxisCoefficients:
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


def _horner(coeffs: Sequence[float], t: float) -> float:
    value = 0.0
    for c in reversed(coeffs):
        value = value * t + c
    return value


@dataclass(frozen=True)
class QuinticTrajectory:
    """
    Quintic position trajectory on [0, duration]

    alpha (m/s^5), beta (m/s^4) and gamma (m/s^3) are the jerk-polynomial
    parameters; `initial` holds x(0), v(0), a(0).
    """
    alpha: Vec3
    beta: Vec3
    gamma: Vec3
    initial: State
    duration: float
    _position: Tuple[AxisCoefficients, ...] = field(init=False, repr=False, compare=False)
    _velocity: Tuple[AxisCoefficients, ...] = field(init=False, repr=False, compare=False)
    _acceleration: Tuple[AxisCoefficients, ...] = field(init=False, repr=False, compare=False)
    _jerk: Tuple[AxisCoefficients, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.duration) and self.duration > 0.0):
            raise InvalidDurationError(f"Trajectory duration must be > 0, got {self.duration}")
        x0, v0, a0 = self.initial.position, self.initial.velocity, self.initial.acceleration
        position = tuple(
            (x0[i], v0[i], a0[i] / 2.0, self.gamma[i] / 6.0, self.beta[i] / 24.0, self.alpha[i] / 120.0)
            for i in range(3)
        )
        self._set_coefficients(position)

    def _set_coefficients(self, position: Tuple[AxisCoefficients, ...]):
        velocity = tuple(_derivative(c) for c in position)
        acceleration = tuple(_derivative(c) for c in velocity)
        jerk = tuple(_derivative(c) for c in acceleration)
        object.__setattr__(self, "_position", position)
        object.__setattr__(self, "_velocity", velocity)
        object.__setattr__(self, "_acceleration", acceleration)
        object.__setattr__(self, "_jerk", jerk)

    @classmethod
    def from_position_coefficients(
        cls, coefficients: Sequence[Sequence[float]], duration: float
    ) -> "QuinticTrajectory":
        """
        Build a trajectory from per-axis ascending monomial coefficients of x(t)

        Args:
            coefficients: Three sequences (c0..c5), shorter sequences are zero-padded
            duration: T in seconds

        Returns:
            QuinticTrajectory: Trajectory whose position polynomial is exactly `coefficients`
        """
        if len(coefficients) != 3:
            raise InvalidArgumentError("Expected coefficients for exactly 3 axes")
        padded = []
        for axis in coefficients:
            axis = tuple(float(c) for c in axis)
            if len(axis) > 6:
                raise InvalidArgumentError(f"Position polynomial degree must be <= 5, got {len(axis) - 1}")
            padded.append(axis + (0.0,) * (6 - len(axis)))

        def column(k: int, scale: float) -> Vec3:
            return Vec3(padded[0][k] * scale, padded[1][k] * scale, padded[2][k] * scale)

        traj = cls(
            alpha=column(5, 120.0),
            beta=column(4, 24.0),
            gamma=column(3, 6.0),
            initial=State(column(0, 1.0), column(1, 1.0), column(2, 2.0)),
            duration=duration,
        )
        traj._set_coefficients(tuple(padded))
        return traj

    @classmethod
    def hover(cls, position: Vec3, duration: float) -> "QuinticTrajectory":
        """
        Stationary trajectory resting at `position`
        """
        zero = Vec3.zero()
        return cls(zero, zero, zero, State.at_rest(position), duration)

    def position_coefficients(self) -> Tuple[AxisCoefficients, ...]:
        """
        Per-axis ascending monomial coefficients (c0..c5) of x(t)
        """
        return self._position

    @staticmethod
    def _evaluate(coeffs: Tuple[AxisCoefficients, ...], t: float) -> Vec3:
        return Vec3(_horner(coeffs[0], t), _horner(coeffs[1], t), _horner(coeffs[2], t))

    def position(self, t: float) -> Vec3:
        return self._evaluate(self._position, t)

    def velocity(self, t: float) -> Vec3:
        return self._evaluate(self._velocity, t)

    def acceleration(self, t: float) -> Vec3:
        return self._evaluate(self._acceleration, t)

    def jerk(self, t: float) -> Vec3:
        return self._evaluate(self._jerk, t)

    def state(self, t: float) -> State:
        return State(self.position(t), self.velocity(t), self.acceleration(t))

    def sample(self, times: np.ndarray, derivative: int = 0) -> np.ndarray:
        """
        Vectorized evaluation of x(t) or one of its derivatives

        Args:
            times: 1-D array of times
            derivative: 0 position, 1 velocity, 2 acceleration, 3 jerk

        Returns:
            np.ndarray: (len(times), 3) array
        """
        table = (self._position, self._velocity, self._acceleration, self._jerk)[derivative]
        return np.stack([np.polyval(axis[::-1], times) for axis in table], axis=1)


@dataclass(frozen=True)
class EndConstraint:
    """
    Per-axis targets for the final position / velocity / acceleration

    None leaves that quantity free on that axis; every axis needs at least one target.
    """
    position: Tuple[Optional[float], Optional[float], Optional[float]]
    velocity: Tuple[Optional[float], Optional[float], Optional[float]] = (None, None, None)
    acceleration: Tuple[Optional[float], Optional[float], Optional[float]] = (None, None, None)

    def __post_init__(self):
        for name in ("position", "velocity", "acceleration"):
            if len(getattr(self, name)) != 3:
                raise InvalidArgumentError(f"EndConstraint.{name} needs 3 entries")
        for axis in range(3):
            if self.position[axis] is None and self.velocity[axis] is None and self.acceleration[axis] is None:
                raise InvalidArgumentError(f"EndConstraint axis {axis} has no constraint")

    @classmethod
    def from_state(cls, state: State) -> "EndConstraint":
        return cls(state.position.as_tuple(), state.velocity.as_tuple(), state.acceleration.as_tuple())

    @classmethod
    def rest_at(cls, position: Vec3) -> "EndConstraint":
        """
        End at `position` with zero velocity and zero acceleration
        """
        return cls.from_state(State.at_rest(position))

    def is_fully_constrained(self) -> bool:
        return all(
            v is not None for v in (*self.position, *self.velocity, *self.acceleration)
        )


@dataclass(frozen=True)
class InputBounds:
    """
    Mass-normalized thrust bounds (m/s^2), body-rate bound (rad/s) and gravity (m/s^2)
    """
    f_min: float = 5.0
    f_max: float = 30.0
    omega_max: float = 20.0
    gravity: Vec3 = STANDARD_GRAVITY

    def __post_init__(self):
        if not (0.0 <= self.f_min < self.f_max):
            raise InvalidArgumentError(f"Need 0 <= f_min < f_max, got f_min={self.f_min}, f_max={self.f_max}")
        if not self.omega_max > 0.0:
            raise InvalidArgumentError(f"omega_max must be > 0, got {self.omega_max}")


def generate(initial: State, end: EndConstraint, duration: float) -> QuinticTrajectory:
    """
    Minimum-average-jerk trajectory between `initial` and a fully constrained end state

    Args:
        initial: x(0), v(0), a(0)
        end: Final position, velocity and acceleration on every axis
        duration: T in seconds

    Returns:
        QuinticTrajectory: Trajectory reproducing `end` at t = T

    Raises:
        InvalidDurationError: duration <= 0
        InvalidArgumentError: end state not fully constrained
    """
    T = duration
    if not (math.isfinite(T) and T > 0.0):
        raise InvalidDurationError(f"Trajectory duration must be > 0, got {T}")
    if not end.is_fully_constrained():
        raise InvalidArgumentError("generate() requires position, velocity and acceleration targets on every axis")

    T2 = T * T
    T3 = T2 * T
    T5 = T3 * T2
    alpha, beta, gamma = [], [], []
    for i in range(3):
        p0, v0, a0 = initial.position[i], initial.velocity[i], initial.acceleration[i]
        dp = end.position[i] - p0 - v0 * T - 0.5 * a0 * T2
        dv = end.velocity[i] - v0 - a0 * T
        da = end.acceleration[i] - a0
        alpha.append((720.0 * dp - 360.0 * T * dv + 60.0 * T2 * da) / T5)
        beta.append((-360.0 * T * dp + 168.0 * T2 * dv - 24.0 * T3 * da) / T5)
        gamma.append((60.0 * T2 * dp - 24.0 * T3 * dv + 3.0 * T3 * T * da) / T5)

    return QuinticTrajectory(
        alpha=Vec3(*alpha),
        beta=Vec3(*beta),
        gamma=Vec3(*gamma),
        initial=initial,
        duration=T,
    )


def average_jerk_squared(traj: QuinticTrajectory) -> float:
    """
    (1/T) * integral over [0, T] of ||jerk(t)||^2, in closed form

    With jerk(t) = gamma + beta t + alpha t^2 / 2 per axis.
    """
    T = traj.duration
    T2 = T * T
    cost = 0.0
    for i in range(3):
        a, b, g = traj.alpha[i], traj.beta[i], traj.gamma[i]
        cost += g * g + g * b * T + (b * b + a * g) * T2 / 3.0 + a * b * T2 * T / 4.0 + a * a * T2 * T2 / 20.0
    return cost


def generate_coefficients(
    initial: State,
    end_positions: np.ndarray,
    durations: np.ndarray,
    end_velocities: Optional[np.ndarray] = None,
    end_accelerations: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    generate() for a batch of end states sharing one initial state

    Args:
        initial: x(0), v(0), a(0) common to every candidate
        end_positions: (N, 3) final positions
        durations: (N,) durations in seconds
        end_velocities: (N, 3) final velocities, rest when omitted
        end_accelerations: (N, 3) final accelerations, rest when omitted

    Returns:
        (alpha, beta, gamma), each of shape (N, 3)

    Raises:
        InvalidDurationError: any duration <= 0
        InvalidArgumentError: shapes do not line up
    """
    pf = np.asarray(end_positions, dtype=np.float64)
    T = np.asarray(durations, dtype=np.float64)
    if pf.ndim != 2 or pf.shape[1] != 3 or T.shape != (pf.shape[0],):
        raise InvalidArgumentError(f"Expected (N, 3) end positions and (N,) durations, got {pf.shape} and {T.shape}")
    if not np.all(np.isfinite(T) & (T > 0.0)):
        raise InvalidDurationError("Trajectory durations must all be > 0")
    vf = np.zeros_like(pf) if end_velocities is None else np.asarray(end_velocities, dtype=np.float64)
    af = np.zeros_like(pf) if end_accelerations is None else np.asarray(end_accelerations, dtype=np.float64)

    p0 = initial.position.to_array()
    v0 = initial.velocity.to_array()
    a0 = initial.acceleration.to_array()
    T1 = T[:, None]
    T2 = T1 * T1
    T3 = T2 * T1
    T5 = T3 * T2
    dp = pf - p0 - v0 * T1 - 0.5 * a0 * T2
    dv = vf - v0 - a0 * T1
    da = af - a0
    alpha = (720.0 * dp - 360.0 * T1 * dv + 60.0 * T2 * da) / T5
    beta = (-360.0 * T1 * dp + 168.0 * T2 * dv - 24.0 * T3 * da) / T5
    gamma = (60.0 * T2 * dp - 24.0 * T3 * dv + 3.0 * T3 * T1 * da) / T5
    return alpha, beta, gamma


def average_jerk_squared_batch(
    alpha: np.ndarray, beta: np.ndarray, gamma: np.ndarray, durations: np.ndarray
) -> np.ndarray:
    """
    average_jerk_squared() for (N, 3) coefficient arrays; returns shape (N,)
    """
    T = np.asarray(durations, dtype=np.float64)[:, None]
    T2 = T * T
    a, b, g = alpha, beta, gamma
    per_axis = g * g + g * b * T + (b * b + a * g) * T2 / 3.0 + a * b * T2 * T / 4.0 + a * a * T2 * T2 / 20.0
    return per_axis.sum(axis=1)


def feasibility_grid(duration: float) -> np.ndarray:
    """
    Sample times used by check_input_feasibility, endpoints included
    """
    intervals = max(FEASIBILITY_MIN_INTERVALS, math.ceil(duration / FEASIBILITY_GRID_STEP))
    return np.linspace(0.0, duration, intervals + 1)


def check_input_feasibility(
    traj: QuinticTrajectory, bounds: InputBounds, margin: float = FEASIBILITY_MARGIN
) -> InputFeasibility:
    """
    Conservative thrust and body-rate screening on a uniform time grid

    Thrust f(t) = ||a(t) - g|| must stay inside [f_min, f_max] and the body-rate
    proxy ||jerk(t)|| / f(t), an upper bound on ||omega||, must stay below
    omega_max; all bounds are tightened by `margin`.

    Args:
        traj: Candidate trajectory
        bounds: Input bounds and gravity
        margin: Relative tightening of every bound

    Returns:
        InputFeasibility: FEASIBLE or INFEASIBLE
    """
    times = feasibility_grid(traj.duration)
    thrust_vec = traj.sample(times, derivative=2) - bounds.gravity.to_array()
    thrust = np.linalg.norm(thrust_vec, axis=1)

    if np.any(thrust < bounds.f_min * (1.0 + margin)) or np.any(thrust > bounds.f_max * (1.0 - margin)):
        return InputFeasibility.INFEASIBLE
    if np.any(thrust <= 0.0):
        return InputFeasibility.INFEASIBLE

    jerk = np.linalg.norm(traj.sample(times, derivative=3), axis=1)
    if np.any(jerk / thrust > bounds.omega_max * (1.0 - margin)):
        return InputFeasibility.INFEASIBLE
    return InputFeasibility.FEASIBLE


def position_extrema(traj: QuinticTrajectory, axis: int) -> Tuple[float, float]:
    """
    Exact (min, max) of x_axis(t) over [0, T] from the roots of the velocity quartic
    """
    coeffs = traj.position_coefficients()[axis]
    times = [0.0, traj.duration]
    try:
        times.extend(real_roots_in_interval(RealPolynomial(_derivative(coeffs)), 0.0, traj.duration))
    except DegeneratePolynomialError:
        pass
    values = [_horner(coeffs, t) for t in times]
    return min(values), max(values)


def check_position_bounds(traj: QuinticTrajectory, box_min: Vec3, box_max: Vec3) -> bool:
    """
    True iff x(t) stays inside the axis-aligned box [box_min, box_max] on [0, T]
    """
    for axis in range(3):
        low, high = position_extrema(traj, axis)
        if low < box_min[axis] or high > box_max[axis]:
            return False
    return True


__all__ = [
    "STANDARD_GRAVITY",
    "InputFeasibility",
    "QuinticTrajectory",
    "EndConstraint",
    "InputBounds",
    "generate",
    "average_jerk_squared",
    "generate_coefficients",
    "average_jerk_squared_batch",
    "feasibility_grid",
    "check_input_feasibility",
    "position_extrema",
    "check_position_bounds",
]
