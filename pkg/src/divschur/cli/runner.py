"""Run a validated configuration into a Report."""
from __future__ import annotations

import logging

from ..errors import DivSchurError
from .config import ExperimentConfig
from .kinds import RUNNERS
from .report import Report

log = logging.getLogger(__name__)


def run(config: ExperimentConfig) -> Report:
    """Execute ``config``; module errors are recorded in the report, not raised.

    The report is deterministic given the config (all randomness is seeded).
    """
    report = Report(config=config.to_dict())
    try:
        RUNNERS[config.kind](config.parameters, report)
    except (DivSchurError, ValueError, ArithmeticError) as exc:
        log.error("%s failed after %d cases: %s", config.kind, len(report.cases), exc)
        report.error = {"type": type(exc).__name__, "message": str(exc),
                        "after_case": len(report.cases)}
    return report
