# __init__.py - 相図・定数の公開モジュール

"""相境界曲線、疎極限の定数、データファイル出力を公開します。"""

from .constants import (
    TABLE_MS,
    SparseConstants,
    r_bar,
    r_m,
    r_trivial,
    sparse_constants,
    ut_sparse_rate,
)
from .curves import Curve, CurveKind, lower_q_curve, upper_q_curve, ut_boundary_k3
from .emit import (
    FIGURE_FILES,
    FigureFile,
    GridSpec,
    emit_curve,
    emit_figure_data,
    evaluate_curve,
    format_rows,
    sample_curve,
)
from .registry import CurveFunctionMeta, CurveRegistry, curve_function

__all__ = [
    # curves
    "Curve",
    "CurveKind",
    "upper_q_curve",
    "lower_q_curve",
    "ut_boundary_k3",
    # constants
    "SparseConstants",
    "TABLE_MS",
    "sparse_constants",
    "r_bar",
    "r_trivial",
    "r_m",
    "ut_sparse_rate",
    # emit
    "GridSpec",
    "emit_curve",
    "emit_figure_data",
    "FigureFile",
    "FIGURE_FILES",
    "evaluate_curve",
    "format_rows",
    "sample_curve",
    # registry
    "CurveRegistry",
    "CurveFunctionMeta",
    "curve_function",
]
