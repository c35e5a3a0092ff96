"""
bench-avoid - headless sample-and-select avoidance loop

This module is responsible for:
1. Checking the scenario's nominal trajectory against its obstacles
2. Sampling rest-to-rest avoidance candidates for a wall-clock budget, in
   chunks whose coefficients and average jerk are computed in one numpy pass
3. Filtering each candidate in order: average-jerk rejection, input
   feasibility, workspace containment, collision, post-maneuver clearance
4. Reporting the minimum-jerk candidate that passed every stage
"""

import logging
import os
import time
from dataclasses import dataclass
from typing import Dict, Optional

from polytraj_ccd.config import config
from polytraj_ccd.core.collision import (
    CheckConfig,
    collision_check_all,
    oracle_collision_check_dynamic,
    rest_clearance_check,
)
from polytraj_ccd.core.errors import InvalidArgumentError
from polytraj_ccd.core.geometry import Vec3
from polytraj_ccd.core.trajectory import (
    EndConstraint,
    InputBounds,
    QuinticTrajectory,
    average_jerk_squared_batch,
    check_position_bounds,
    generate,
    generate_coefficients,
)
from polytraj_ccd.tools.check_scene import is_input_feasible, oracle_scene_hit
from polytraj_ccd.tools.report import AvoidanceReport, SelectedCandidate, ValidationSummary
from polytraj_ccd.tools.rng import stream, uniform_box
from polytraj_ccd.tools.scene_io import Scene, load_scenario

logger = logging.getLogger(__name__)

STAGES = ("jerk", "input", "workspace", "collision", "clearance")


@dataclass
class _Best:
    traj: QuinticTrajectory
    end_position: Vec3
    cost: float


def _clear_after_arrival(
    scene: Scene, end_position: Vec3, arrival: float, horizon: float, cfg: CheckConfig
) -> bool:
    return all(
        rest_clearance_check(end_position, moving, scene.vehicle_radius, arrival, horizon, cfg).is_feasible
        for moving in scene.moving_obstacles
    )


def _oracle_clearance_hit(scene: Scene, end_position: Vec3, arrival: float, horizon: float, dt: float) -> bool:
    remaining = horizon - arrival
    if remaining <= 0.0:
        return False
    hover = QuinticTrajectory.hover(end_position, remaining)
    return any(
        oracle_collision_check_dynamic(hover, moving.shifted(arrival), scene.vehicle_radius, dt).hit
        for moving in scene.moving_obstacles
    )


def bench_avoidance_loop(
    scenario_path: str,
    budget_ms: float,
    seed: int,
    cfg: CheckConfig,
    bounds: Optional[InputBounds] = None,
    validate_dt: Optional[float] = None,
) -> AvoidanceReport:
    """
    Run the avoidance loop of one scenario

    Args:
        scenario_path: Scenario JSON file
        budget_ms: Wall-clock budget for candidate evaluation (ms, >= 0)
        seed: Candidate sampling seed
        cfg: Collision-check parameters
        bounds: Input bounds (configured bounds when None)
        validate_dt: Re-verify the selected trajectory with the sampling oracle

    Returns:
        AvoidanceReport: SELECTED with the chosen candidate, or
        NO_FEASIBLE_CANDIDATE when the budget ran out first

    Raises:
        ConfigurationError: missing or invalid scenario
    """
    if not budget_ms >= 0.0:
        raise InvalidArgumentError(f"budget_ms must be >= 0, got {budget_ms}")
    scenario = load_scenario(scenario_path)
    scene = scenario.build()
    bounds = bounds or config.get_input_bounds()
    chunk = int(config.get_benchmark("avoidance")["timer_check_interval"])
    initial = scenario.initial_state.build()
    horizon = scenario.horizon

    nominal = generate(initial, EndConstraint.from_state(scenario.nominal.end.build()), scenario.nominal.duration)
    nominal_verdict = collision_check_all(
        nominal, scene.static_obstacles, scene.moving_obstacles, scene.vehicle_radius, cfg
    )
    logger.info("Nominal trajectory of %s: %s", os.path.basename(scenario_path), nominal_verdict.kind.value)

    rng = stream(seed, 0)
    region_min, region_max = scenario.sample_region.min, scenario.sample_region.max
    rejections: Dict[str, int] = {stage: 0 for stage in STAGES}
    evaluated = 0
    feasible = 0
    best: Optional[_Best] = None

    clock = time.perf_counter_ns
    started = clock()
    budget_ns = int(budget_ms * 1e6)
    while clock() - started < budget_ns:
        ends = uniform_box(rng, region_min, region_max, chunk)
        durations = rng.uniform(*scenario.duration_range, size=chunk)
        alpha, beta, gamma = generate_coefficients(initial, ends, durations)
        costs = average_jerk_squared_batch(alpha, beta, gamma, durations).tolist()
        evaluated += chunk
        for i, cost in enumerate(costs):
            if best is not None and cost > best.cost:
                rejections["jerk"] += 1
                continue
            # only candidates that could improve on the best get a trajectory object
            duration = float(durations[i])
            end_position = Vec3(*ends[i].tolist())
            traj = QuinticTrajectory(
                Vec3(*alpha[i].tolist()), Vec3(*beta[i].tolist()), Vec3(*gamma[i].tolist()), initial, duration
            )
            if not is_input_feasible(traj, bounds):
                rejections["input"] += 1
                continue
            if scene.workspace is not None and not check_position_bounds(traj, *scene.workspace):
                rejections["workspace"] += 1
                continue
            verdict = collision_check_all(
                traj, scene.static_obstacles, scene.moving_obstacles, scene.vehicle_radius, cfg
            )
            if not verdict.is_feasible:
                rejections["collision"] += 1
                continue
            if not _clear_after_arrival(scene, end_position, duration, horizon, cfg):
                rejections["clearance"] += 1
                continue
            feasible += 1
            best = _Best(traj, end_position, cost)
    elapsed_ms = (clock() - started) / 1e6

    report = AvoidanceReport(
        scenario=scenario_path,
        seed=seed,
        budget_ms=budget_ms,
        elapsed_ms=elapsed_ms,
        outcome="SELECTED" if best is not None else "NO_FEASIBLE_CANDIDATE",
        nominal_verdict=nominal_verdict.kind.value,
        candidates_evaluated=evaluated,
        feasible_candidates=feasible,
        rejections=rejections,
    )
    if best is not None:
        report.selected = SelectedCandidate(
            end_position=best.end_position.as_tuple(),
            duration=best.traj.duration,
            average_jerk_squared=best.cost,
        )
        if validate_dt is not None:
            hit = oracle_scene_hit(scene, best.traj, validate_dt) or _oracle_clearance_hit(
                scene, best.end_position, best.traj.duration, horizon, validate_dt
            )
            report.validation = ValidationSummary(oracle_dt=validate_dt, checked=1, mismatches=int(hit))

    logger.info(
        "bench-avoid: %d candidates in %.2f ms, %d feasible, outcome %s",
        evaluated, elapsed_ms, feasible, report.outcome,
    )
    return report


__all__ = ["STAGES", "bench_avoidance_loop"]
