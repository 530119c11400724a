"""Plotting companion for cfrbench.

Consumes the solver only through its published artifacts: checkpoint CSVs
written by ``cfrbench solve`` / ``cfrbench bench`` and the schedule dump
written by ``cfrbench bound``.  Nothing in here imports the solver.
"""

from figures.schedule_math import (
    ScheduleTokenError,
    gamma_curve,
    parse_schedule_token,
    weight_crossing,
    weight_curve,
)

__all__ = [
    "ScheduleTokenError",
    "gamma_curve",
    "parse_schedule_token",
    "weight_crossing",
    "weight_curve",
]
