"""
bench-forest - batches of candidates flown through a forest of prisms

Every batch draws one initial state and a batch of candidates that end at
rest at random positions. Each candidate goes through generation, input
screening and collision checking against all prisms of the layout; the
report gives the collision-free fraction over all candidates, the share of
batches that found at least one collision-free candidate and the mean
pipeline time until the first one was found.
"""

import logging
import time
from functools import partial
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from polytraj_ccd.config import config
from polytraj_ccd.core.collision import CheckConfig, collision_check_all
from polytraj_ccd.core.errors import ConfigurationError, InvalidArgumentError
from polytraj_ccd.core.geometry import State, Vec3
from polytraj_ccd.core.trajectory import EndConstraint, InputBounds, generate
from polytraj_ccd.tools.check_scene import is_input_feasible, oracle_scene_hit
from polytraj_ccd.tools.parallel import map_blocks
from polytraj_ccd.tools.report import BenchReport, BlockTally
from polytraj_ccd.tools.rng import Block, stream, uniform_rows, uniform_values
from polytraj_ccd.tools.scene_io import Scene, load_scene

logger = logging.getLogger(__name__)

BatchResult = Tuple[BlockTally, Optional[int]]


def _initial_state(rng: np.random.Generator, protocol: Dict[str, Any]) -> State:
    vx = uniform_values(rng, *protocol["velocity_x"], 1)[0]
    ax = uniform_values(rng, *protocol["acceleration_x"], 1)[0]
    v_lat = uniform_values(rng, *protocol["velocity_lateral"], 2)
    a_lat = uniform_values(rng, *protocol["acceleration_lateral"], 2)
    return State(
        Vec3.from_iterable(protocol["initial_position"]),
        Vec3(vx, *v_lat),
        Vec3(ax, *a_lat),
    )


def run_batch(
    block: Block,
    seed: int,
    protocol: Dict[str, Any],
    scene: Scene,
    cfg: CheckConfig,
    bounds: InputBounds,
    validate_dt: Optional[float] = None,
) -> BatchResult:
    """
    Run one batch; returns its tally and the time (ns) to its first collision-free candidate
    """
    rng = stream(seed, block.index)
    n = block.count
    initial = _initial_state(rng, protocol)
    lo, hi = protocol["end_position"]
    end_positions = uniform_rows(rng, [lo] * 3, [hi] * 3, n)
    durations = uniform_values(rng, *protocol["duration"], n)

    tally = BlockTally(trials=n)
    clock = time.perf_counter_ns
    batch_started = clock()
    first_feasible_ns = None

    for i in range(n):
        started = clock()
        traj = generate(initial, EndConstraint.rest_at(Vec3(*end_positions[i])), durations[i])
        generated = clock()
        feasible_inputs = is_input_feasible(traj, bounds)
        screened = clock()
        tally.generation_ns.append(generated - started)
        tally.input_ns.append(screened - generated)
        if not feasible_inputs:
            tally.input_infeasible += 1
            continue

        started = clock()
        verdict = collision_check_all(traj, scene.static_obstacles, scene.moving_obstacles, scene.vehicle_radius, cfg)
        finished = clock()
        tally.record(verdict.kind, finished - started)
        if not verdict.is_feasible:
            continue
        if first_feasible_ns is None:
            first_feasible_ns = finished - batch_started

        if validate_dt is not None:
            tally.validated += 1
            if oracle_scene_hit(scene, traj, validate_dt):
                tally.mismatch_trials.append(block.start + i)

    return tally, first_feasible_ns


def bench_forest_stopping(
    batches: int,
    seed: int,
    cfg: CheckConfig,
    layout: Optional[str],
    bounds: Optional[InputBounds] = None,
    threads: int = 1,
    validate_dt: Optional[float] = None,
    protocol: Optional[Dict[str, Any]] = None,
) -> BenchReport:
    """
    Forest benchmark

    Args:
        batches: Number of batches (>= 1)
        seed: Run seed; batch k draws from its own stream
        cfg: Collision-check parameters
        layout: Scene file with the prisms
        bounds: Input bounds (configured bounds when None)
        threads: Worker processes
        validate_dt: Re-verify collision-free candidates with the oracle
        protocol: Sampling intervals (benchmarks.forest when None)

    Returns:
        BenchReport: Verdicts and timings plus collision_free_fraction,
        batch_success_rate, mean_first_feasible_us and the informational
        reference_collision_free_fraction

    Raises:
        ConfigurationError: missing or invalid layout
    """
    if batches < 1:
        raise InvalidArgumentError(f"batches must be >= 1, got {batches}")
    if not layout:
        raise ConfigurationError("bench-forest needs a layout file")
    scene = load_scene(layout)
    protocol = protocol or config.get_benchmark("forest")
    bounds = bounds or config.get_input_bounds()
    batch_size = int(protocol["batch_size"])
    blocks = [Block(k, k * batch_size, batch_size) for k in range(batches)]

    logger.info(
        "bench-forest: %d batches of %d, %d obstacle(s) from %s, seed=%d",
        batches, batch_size, len(scene.static_obstacles) + len(scene.moving_obstacles), layout, seed,
    )
    worker = partial(
        run_batch, seed=seed, protocol=protocol, scene=scene, cfg=cfg, bounds=bounds, validate_dt=validate_dt
    )
    results: List[BatchResult] = map_blocks(worker, blocks, threads)

    tally = BlockTally.combine([batch_tally for batch_tally, _ in results])
    first_times = [first for _, first in results if first is not None]
    metrics = {
        "collision_free_fraction": tally.counts["FEASIBLE"] / tally.trials,
        "batch_success_rate": len(first_times) / batches,
        "mean_first_feasible_us": float(np.mean(first_times)) / 1e3 if first_times else 0.0,
        "reference_collision_free_fraction": float(protocol["reference_collision_free_fraction"]),
    }
    report = tally.to_report(
        "forest", seed, batch_size, max(1, min(threads, batches)), cfg.t_min, validate_dt, metrics
    )
    logger.info(
        "bench-forest done: collision-free %.4f, batch success %.4f",
        metrics["collision_free_fraction"], metrics["batch_success_rate"],
    )
    return report


__all__ = ["run_batch", "bench_forest_stopping"]
