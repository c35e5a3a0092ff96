"""
Tools - scene files, reports and the benchmark harnesses built on core
"""

from polytraj_ccd.tools.check_scene import check_trajectory
from polytraj_ccd.tools.bench_random_sphere import bench_random_sphere
from polytraj_ccd.tools.bench_forest import bench_forest_stopping
from polytraj_ccd.tools.bench_avoid import bench_avoidance_loop
from polytraj_ccd.tools.report import BenchReport, AvoidanceReport, write_report
from polytraj_ccd.tools.scene_io import Scene, load_scene, load_trajectory, load_scenario

__all__ = [
    "check_trajectory",
    "bench_random_sphere",
    "bench_forest_stopping",
    "bench_avoidance_loop",
    "BenchReport",
    "AvoidanceReport",
    "write_report",
    "Scene",
    "load_scene",
    "load_trajectory",
    "load_scenario",
]
