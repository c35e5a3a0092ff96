"""
Configuration management for polytraj_ccd.

Precedence, lowest to highest: built-in defaults, the YAML file named by
CCD_CONFIG_PATH (default ccd.yaml), environment variables, CLI flags.
"""

import copy
import logging
import os
import sys
from typing import Any, Dict, Optional

import yaml
from pydantic import ValidationError

from polytraj_ccd.core.collision import CheckConfig
from polytraj_ccd.core.errors import ConfigurationError, InvalidArgumentError
from polytraj_ccd.core.geometry import Vec3
from polytraj_ccd.core.trajectory import InputBounds

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Config:
    """
    polytraj_ccd configuration
    """

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or os.getenv("CCD_CONFIG_PATH", "ccd.yaml")
        self.log_level = "INFO"
        self.threads = 1

        # Load defaults
        self.name = "polytraj-ccd"
        self.checking = {
            "t_min": 0.002,
            "max_recursion_depth": 64,
            "oracle_dt": 1e-4,
        }
        self.input_bounds = {
            "f_min": 5.0,
            "f_max": 30.0,
            "omega_max": 20.0,
            "gravity": [0.0, 0.0, -9.81],
        }
        self.benchmarks = {
            "random_sphere": {
                "initial_position": [0.0, 0.0, 0.0],
                "end_position": [-4.0, 4.0],
                "velocity": [-4.0, 4.0],
                "acceleration": [-4.0, 4.0],
                "duration": [0.2, 4.0],
                "sphere_radius": [0.1, 1.5],
                "sphere_center": [-4.0, 4.0],
                "block_size": 1024,
            },
            "forest": {
                "initial_position": [-2.5, 0.0, 0.0],
                "velocity_x": [2.0, 8.0],
                "acceleration_x": [4.0, 10.0],
                "velocity_lateral": [-2.0, 2.0],
                "acceleration_lateral": [-2.0, 2.0],
                "end_position": [-2.5, 2.5],
                "duration": [0.5, 2.0],
                "batch_size": 100,
                "reference_collision_free_fraction": 0.602,
            },
            "avoidance": {
                "budget_ms": 15.0,
                "timer_check_interval": 32,
            },
        }

        # Load from file, then let the environment override it
        self._load_from_file()
        self._load_from_env()

    def _load_from_file(self):
        """
        Load configuration from YAML file
        """
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    config_data = yaml.safe_load(f)
                    if config_data:
                        self._update_from_dict(config_data)
            except (OSError, yaml.YAMLError) as e:
                logger.warning("Failed to load config file %s: %s", self.config_path, e)

    def _load_from_env(self):
        """
        Apply CCD_LOG_LEVEL and CCD_THREADS
        """
        self.log_level = os.getenv("CCD_LOG_LEVEL", self.log_level)
        threads = os.getenv("CCD_THREADS")
        if threads is not None:
            try:
                self.threads = max(1, int(threads))
            except ValueError:
                logger.warning("Ignoring non-integer CCD_THREADS=%r", threads)

    def _update_from_dict(self, data: Dict[str, Any]):
        """
        Update configuration from dictionary
        """
        if "logging" in data:
            self.log_level = data["logging"].get("level", self.log_level)
        if "threads" in data:
            self.threads = max(1, int(data["threads"]))
        if "checking" in data:
            self.checking.update(data["checking"])
        if "input_bounds" in data:
            self.input_bounds.update(data["input_bounds"])
        if "benchmarks" in data:
            for bench_name, bench_config in data["benchmarks"].items():
                if bench_name in self.benchmarks:
                    self.benchmarks[bench_name].update(bench_config)
                else:
                    self.benchmarks[bench_name] = bench_config

    def get_check_config(self, **overrides) -> CheckConfig:
        """
        Collision-check parameters

        Args:
            **overrides: Field values taking precedence over the file (e.g. t_min from the CLI)

        Returns:
            CheckConfig: Validated parameters
        """
        values = {
            "t_min": self.checking["t_min"],
            "max_recursion_depth": self.checking["max_recursion_depth"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return CheckConfig(**values)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid checking configuration: {e}") from e

    def get_input_bounds(self) -> InputBounds:
        """
        Thrust and body-rate bounds used by input-feasibility screening
        """
        bounds = self.input_bounds
        try:
            return InputBounds(
                f_min=float(bounds["f_min"]),
                f_max=float(bounds["f_max"]),
                omega_max=float(bounds["omega_max"]),
                gravity=Vec3.from_iterable(bounds["gravity"]),
            )
        except (KeyError, TypeError, InvalidArgumentError) as e:
            raise ConfigurationError(f"Invalid input_bounds configuration: {e}") from e

    @property
    def oracle_dt(self) -> float:
        return float(self.checking["oracle_dt"])

    def get_benchmark(self, name: str) -> Dict[str, Any]:
        """
        Sampling protocol of one benchmark

        Args:
            name: random_sphere, forest or avoidance

        Returns:
            dict: A copy of the benchmark section
        """
        if name not in self.benchmarks:
            raise ConfigurationError(f"Unknown benchmark: {name}")
        return copy.deepcopy(self.benchmarks[name])


def configure_logging(level: Optional[str] = None):
    """
    Configure the root logger once; results never go through logging
    """
    logging.basicConfig(
        level=(level or config.log_level).upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


# Global config instance
config = Config()
