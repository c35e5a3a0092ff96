"""
bench-random-sphere - Monte Carlo benchmark against one random sphere per trial

This module is responsible for:
1. Drawing candidate boundary states, durations and sphere obstacles from the
   uniform distributions configured under benchmarks.random_sphere
2. Screening candidates for input feasibility before collision checking
3. Timing generation, input screening and collision detection per trial
4. Optional re-verification of FEASIBLE verdicts with the sampling oracle
"""

import logging
import time
from functools import partial
from typing import Any, Dict, Optional

from polytraj_ccd.config import config
from polytraj_ccd.core.collision import CheckConfig, collision_check, oracle_collision_check
from polytraj_ccd.core.errors import InvalidArgumentError
from polytraj_ccd.core.geometry import State, Vec3
from polytraj_ccd.core.obstacles import SphereObstacle
from polytraj_ccd.core.trajectory import EndConstraint, InputBounds, generate
from polytraj_ccd.tools.check_scene import is_input_feasible
from polytraj_ccd.tools.parallel import map_blocks
from polytraj_ccd.tools.report import BenchReport, BlockTally
from polytraj_ccd.tools.rng import Block, split_blocks, stream, uniform_rows, uniform_values

logger = logging.getLogger(__name__)


def run_block(
    block: Block,
    seed: int,
    protocol: Dict[str, Any],
    cfg: CheckConfig,
    bounds: InputBounds,
    validate_dt: Optional[float] = None,
) -> BlockTally:
    """
    Run the trials of one block from its own random stream
    """
    rng = stream(seed, block.index)
    n = block.count

    def box(key: str):
        lo, hi = protocol[key]
        return uniform_rows(rng, [lo] * 3, [hi] * 3, n)

    # draw order is part of the reproducibility contract
    end_positions = box("end_position")
    initial_velocities = box("velocity")
    end_velocities = box("velocity")
    initial_accelerations = box("acceleration")
    end_accelerations = box("acceleration")
    durations = uniform_values(rng, *protocol["duration"], n)
    radii = uniform_values(rng, *protocol["sphere_radius"], n)
    centers = box("sphere_center")

    origin = Vec3.from_iterable(protocol["initial_position"])
    tally = BlockTally(trials=n)
    clock = time.perf_counter_ns

    for i in range(n):
        initial = State(origin, Vec3(*initial_velocities[i]), Vec3(*initial_accelerations[i]))
        end = EndConstraint(
            tuple(end_positions[i]), tuple(end_velocities[i]), tuple(end_accelerations[i])
        )

        started = clock()
        traj = generate(initial, end, durations[i])
        generated = clock()
        feasible_inputs = is_input_feasible(traj, bounds)
        screened = clock()
        tally.generation_ns.append(generated - started)
        tally.input_ns.append(screened - generated)
        if not feasible_inputs:
            tally.input_infeasible += 1
            continue

        sphere = SphereObstacle(Vec3(*centers[i]), radii[i])
        started = clock()
        verdict = collision_check(traj, sphere, cfg)
        tally.record(verdict.kind, clock() - started)

        if validate_dt is not None and verdict.is_feasible:
            tally.validated += 1
            if oracle_collision_check(traj, sphere, validate_dt).hit:
                tally.mismatch_trials.append(block.start + i)

    return tally


def bench_random_sphere(
    trials: int,
    seed: int,
    cfg: CheckConfig,
    bounds: Optional[InputBounds] = None,
    threads: int = 1,
    validate_dt: Optional[float] = None,
    protocol: Optional[Dict[str, Any]] = None,
) -> BenchReport:
    """
    Monte Carlo benchmark of collision_check against random spheres

    Args:
        trials: Candidate trajectories to generate (>= 1)
        seed: Run seed; identical seed and trials give identical verdict counts
        cfg: Collision-check parameters
        bounds: Input bounds (configured bounds when None)
        threads: Worker processes
        validate_dt: Re-verify FEASIBLE verdicts with the oracle at this step
        protocol: Sampling intervals (benchmarks.random_sphere when None)

    Returns:
        BenchReport: Verdict counts and fractions over input-feasible
        candidates, timings, and validation summary
    """
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    protocol = protocol or config.get_benchmark("random_sphere")
    bounds = bounds or config.get_input_bounds()
    block_size = int(protocol["block_size"])
    blocks = split_blocks(trials, block_size)

    logger.info("bench-random-sphere: %d trials in %d blocks, seed=%d", trials, len(blocks), seed)
    worker = partial(run_block, seed=seed, protocol=protocol, cfg=cfg, bounds=bounds, validate_dt=validate_dt)
    tally = BlockTally.combine(map_blocks(worker, blocks, threads))

    report = tally.to_report(
        "random_sphere", seed, block_size, max(1, min(threads, len(blocks))), cfg.t_min, validate_dt
    )
    logger.info(
        "bench-random-sphere done: %s (input-infeasible %d)", report.counts, report.input_infeasible
    )
    return report


__all__ = ["run_block", "bench_random_sphere"]
