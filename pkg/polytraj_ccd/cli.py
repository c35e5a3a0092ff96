"""
CLI entry point for polytraj-ccd.

Exit codes: 0 success, 1 unexpected error, 2 configuration / parse error,
3 a FEASIBLE verdict contradicted by the sampling oracle.
"""

import argparse
import logging
import sys
from typing import List, Optional

from polytraj_ccd import __version__
from polytraj_ccd.config import config, configure_logging
from polytraj_ccd.core.errors import CCDError, ConfigurationError, InvalidArgumentError, ValidationMismatchError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_MISMATCH = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polytraj-ccd",
        description="Continuous collision detection for quintic trajectories",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (default: config / CCD_THREADS)")
    parser.add_argument("--validate", action="store_true", help="Re-verify FEASIBLE verdicts with the sampling oracle")
    parser.add_argument("--oracle-dt", type=float, default=None, help="Oracle sampling step in seconds (default: config)")
    parser.add_argument("--output", default=None, help="Report file (.json or .csv); stdout when omitted")
    parser.add_argument("--log-level", default=None, help="Logging level (default: config / CCD_LOG_LEVEL)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", help="Check one trajectory against one scene")
    check.add_argument("scene", help="Scene JSON file")
    check.add_argument("trajectory", help="Trajectory JSON file")
    check.add_argument("--tmin", type=float, default=None, help="Minimum section length (s)")

    sphere = subparsers.add_parser("bench-random-sphere", help="Random sphere Monte Carlo benchmark")
    sphere.add_argument("--trials", type=int, required=True)
    sphere.add_argument("--seed", type=int, default=0)
    sphere.add_argument("--tmin", type=float, default=None, help="Minimum section length (s)")

    forest = subparsers.add_parser("bench-forest", help="Forest batches benchmark")
    forest.add_argument("--layout", default=None, help="Forest layout JSON file")
    forest.add_argument("--batches", type=int, required=True)
    forest.add_argument("--seed", type=int, default=0)
    forest.add_argument("--tmin", type=float, default=None, help="Minimum section length (s)")

    avoid = subparsers.add_parser("bench-avoid", help="Sample-and-select avoidance loop")
    avoid.add_argument("--scenario", required=True, help="Scenario JSON file")
    avoid.add_argument("--budget-ms", type=float, default=None, help="Wall-clock budget (ms)")
    avoid.add_argument("--seed", type=int, default=0)
    avoid.add_argument("--tmin", type=float, default=None, help="Minimum section length (s)")

    serve = subparsers.add_parser("serve", help="Serve check requests")
    serve.add_argument("--transport", choices=["stdio", "http"], default="stdio", help="Transport mode (stdio or http)")
    serve.add_argument("--host", default="127.0.0.1", help="Host for HTTP server")
    serve.add_argument("--port", type=int, default=8000, help="Port for HTTP server")

    return parser


def _run(args: argparse.Namespace) -> int:
    from polytraj_ccd.tools.report import write_report

    threads = args.threads or config.threads
    oracle_dt = (args.oracle_dt or config.oracle_dt) if args.validate else None
    if args.command == "serve":
        from polytraj_ccd.server import CheckServer

        server = CheckServer()
        if args.transport == "stdio":
            server.start_stdio()
        else:
            server.start_http(host=args.host, port=args.port)
        return EXIT_OK

    cfg = config.get_check_config(t_min=args.tmin)

    if args.command == "check":
        from polytraj_ccd.tools.check_scene import check_trajectory
        from polytraj_ccd.tools.scene_io import load_scene, load_trajectory

        result = check_trajectory(
            load_scene(args.scene), load_trajectory(args.trajectory), cfg, config.get_input_bounds(), oracle_dt
        )
        write_report(result, args.output)
        if result["status"] == "MISMATCH":
            raise ValidationMismatchError(f"Sampling oracle contradicts {result['mismatches']} FEASIBLE verdict(s)")
        return EXIT_OK

    if args.command == "bench-random-sphere":
        from polytraj_ccd.tools.bench_random_sphere import bench_random_sphere

        report = bench_random_sphere(args.trials, args.seed, cfg, threads=threads, validate_dt=oracle_dt)
    elif args.command == "bench-forest":
        from polytraj_ccd.tools.bench_forest import bench_forest_stopping

        report = bench_forest_stopping(args.batches, args.seed, cfg, args.layout, threads=threads, validate_dt=oracle_dt)
    else:
        from polytraj_ccd.tools.bench_avoid import bench_avoidance_loop

        budget_ms = args.budget_ms
        if budget_ms is None:
            budget_ms = float(config.get_benchmark("avoidance")["budget_ms"])
        report = bench_avoidance_loop(args.scenario, budget_ms, args.seed, cfg, validate_dt=oracle_dt)

    write_report(report, args.output)
    if report.validation is not None and report.validation.mismatches:
        raise ValidationMismatchError(
            f"Sampling oracle contradicts {report.validation.mismatches} FEASIBLE verdict(s)"
        )
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.log_level)
    try:
        return _run(args)
    except ValidationMismatchError as e:
        logger.error("%s", e)
        return EXIT_MISMATCH
    except (ConfigurationError, InvalidArgumentError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except CCDError as e:
        logger.error("%s", e)
        return EXIT_ERROR
    except OSError as e:
        logger.error("Cannot write output: %s", e)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
