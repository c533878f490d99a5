"""Kundu-DNLS solutions by Darboux transformation."""

from ._core import (
    KdnlsError,
    __version__,
    evaluate,
    field,
    figure_commands,
    param_schema,
    peaks,
    pin_down_convention,
    residual_order,
    run_criterion,
    solution_names,
)

__all__ = [
    "KdnlsError",
    "__version__",
    "evaluate",
    "field",
    "figure_commands",
    "param_schema",
    "peaks",
    "pin_down_convention",
    "residual_order",
    "run_criterion",
    "solution_names",
]
