# __init__.py - 変分オラクルの公開モジュール

"""k ブロック下側裾問題の求解器と、解の監査を公開します。"""

from .audit import AuditCheck, AuditReport, audit_solution, minimizer_lower_bound
from .problem import LowerTailProblem
from .solver import (
    OracleSolution,
    augmented_lagrangian,
    count_boundary_blocks,
    fit_multiplier,
    initial_points,
    interior_mask,
    mode_label,
    parse_mode,
    polish,
    solve_lt,
    stationarity_residual,
)

__all__ = [
    # problem
    "LowerTailProblem",
    # solver
    "OracleSolution",
    "solve_lt",
    "parse_mode",
    "mode_label",
    "augmented_lagrangian",
    "polish",
    "initial_points",
    "fit_multiplier",
    "stationarity_residual",
    "interior_mask",
    "count_boundary_blocks",
    # audit
    "AuditCheck",
    "AuditReport",
    "audit_solution",
    "minimizer_lower_bound",
]
