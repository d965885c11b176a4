"""Experiment runner: configs, reports and the ``divschur`` command."""
from .config import KINDS, SCHEMA_VERSION, ExperimentConfig, describe
from .report import Report, emit, render
from .runner import run

__all__ = ["KINDS", "SCHEMA_VERSION", "ExperimentConfig", "describe", "Report", "emit",
           "render", "run"]
