# __init__.py - トピック定義を公開するモジュール

"""PubSub トピックの列挙型を公開します。"""

from .topics import (
    AutoNamedTopic,
    ConfigTopic,
    CurveTopic,
    SearchTopic,
    SimulationTopic,
    SolverTopic,
)

__all__ = [
    "AutoNamedTopic",
    "SolverTopic",
    "SearchTopic",
    "CurveTopic",
    "SimulationTopic",
    "ConfigTopic",
]
