"""Experiment runner for the correlation-measure comparisons."""

from .config import ExperimentConfig, load_config
from .runner import run_example1, run_example2, run_thermal
