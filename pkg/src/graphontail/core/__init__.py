# __init__.py - コア機能を公開するモジュール

"""graphontail のコア機能（例外・Pub/Sub・ログ）を提供するサブパッケージ。"""

from .errors import (
    AdmissibleDomainError,
    BudgetExceededError,
    DomainError,
    GraphError,
    GraphontailError,
    ParameterError,
    SolverError,
    UnknownIdentifierError,
)
from .numeric import ScanResult, bisect_predicate, find_root, scan_minimum
from .pubsub_base import (
    PubSubBase,
    disable_debug_logging,
    enable_debug_logging,
    publish_event,
)

__all__ = [
    # errors
    "GraphontailError",
    "ParameterError",
    "DomainError",
    "AdmissibleDomainError",
    "BudgetExceededError",
    "GraphError",
    "UnknownIdentifierError",
    "SolverError",
    # numeric
    "ScanResult",
    "find_root",
    "bisect_predicate",
    "scan_minimum",
    # pubsub
    "PubSubBase",
    "publish_event",
    "enable_debug_logging",
    "disable_debug_logging",
]
