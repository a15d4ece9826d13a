"""Design orchestration, sweep tables and the command-line interface."""

from .config import load_config, parse_config
from .design import DesignReport, DesignSpec, design
from .report import report_to_dict
from .sweeps import SweepConfig, compute_sweep, run_sweep

__all__ = [
    "DesignReport",
    "DesignSpec",
    "SweepConfig",
    "compute_sweep",
    "design",
    "load_config",
    "parse_config",
    "report_to_dict",
    "run_sweep",
]
