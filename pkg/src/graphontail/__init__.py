# __init__.py - graphontail パッケージの外部 API を提供するモジュール

"""graphontail パッケージの主要な型と演算を公開する初期化モジュール。"""

from .breaking import BreakingWitness, critical_triple, find_breaking, find_breaking_sparse, scale_witness
from .core import (
    BudgetExceededError,
    DomainError,
    GraphontailError,
    ParameterError,
    disable_debug_logging,
    enable_debug_logging,
)
from .empirics import TailEstimate, lower_tail_estimate, sample_subgraph_density, tail_curve
from .entropy import EntropyFn, relative_entropy, sparse_entropy
from .graphs import Graph, graph_library
from .phasecurves import (
    GridSpec,
    emit_curve,
    emit_figure_data,
    lower_q_curve,
    sparse_constants,
    upper_q_curve,
    ut_boundary_k3,
)
from .stepkernel import StepGraphon, StepKernel, density, expect, functional_derivative
from .store import NumericsConfig, OracleOptions, Store, get_store, settings
from .symcheck import (
    Certificate,
    lt_h_general_certificate,
    lt_h_k3_certificate,
    lt_k3_certificate,
    ut_k3_certificate,
)
from .topic import AutoNamedTopic
from .varoracle import OracleSolution, audit_solution, solve_lt, stationarity_residual

__all__ = [
    # graphs
    "Graph",
    "graph_library",
    # stepkernel
    "StepKernel",
    "StepGraphon",
    "density",
    "functional_derivative",
    "expect",
    # entropy
    "EntropyFn",
    "relative_entropy",
    "sparse_entropy",
    # symcheck
    "Certificate",
    "lt_k3_certificate",
    "ut_k3_certificate",
    "lt_h_k3_certificate",
    "lt_h_general_certificate",
    # breaking
    "BreakingWitness",
    "find_breaking",
    "find_breaking_sparse",
    "scale_witness",
    "critical_triple",
    # phasecurves
    "upper_q_curve",
    "lower_q_curve",
    "ut_boundary_k3",
    "sparse_constants",
    "GridSpec",
    "emit_curve",
    "emit_figure_data",
    # varoracle
    "OracleSolution",
    "solve_lt",
    "stationarity_residual",
    "audit_solution",
    # empirics
    "TailEstimate",
    "sample_subgraph_density",
    "lower_tail_estimate",
    "tail_curve",
    # store
    "Store",
    "get_store",
    "settings",
    "NumericsConfig",
    "OracleOptions",
    # topic
    "AutoNamedTopic",
    # errors
    "GraphontailError",
    "ParameterError",
    "DomainError",
    "BudgetExceededError",
    # debug
    "enable_debug_logging",
    "disable_debug_logging",
]
