# topics.py - PubSub トピック列挙型の定義

"""
src/graphontail/topic/topics.py

数値ルーチンが発行する進捗トピックと設定更新トピックを提供します。
"""

from enum import StrEnum, auto


class AutoNamedTopic(StrEnum):
    """
    Enumメンバー名を自動で小文字化し、クラス名のプレフィックス付き文字列を値とする列挙型。

    - メンバー値は "ClassName.member" 形式の文字列
    - str()や比較でそのまま利用可能
    """

    def _generate_next_value_(name, start, count, last_values):
        return name.lower()

    def __new__(cls, value):
        full = f"{cls.__name__}.{value}"
        obj = str.__new__(cls, full)
        obj._value_ = full
        return obj

    def __str__(self):
        return self.value


class SolverTopic(AutoNamedTopic):
    """
    離散化ソルバー（varoracle）の進捗トピック。

    - RESTART_FINISHED(index, objective, converged)
    - SOLVE_FINISHED(objective, restarts)
    """

    RESTART_FINISHED = auto()
    SOLVE_FINISHED = auto()


class SearchTopic(AutoNamedTopic):
    """
    対称性の破れ探索（breaking）のトピック。

    - CRITICAL_TRIPLE_READY(a1, b1, r1)
    - WITNESS_FOUND(kind, margin)
    """

    CRITICAL_TRIPLE_READY = auto()
    WITNESS_FOUND = auto()


class CurveTopic(AutoNamedTopic):
    """
    曲線データ出力のトピック。

    - FILE_WRITTEN(identifier, path, rows)
    """

    FILE_WRITTEN = auto()


class SimulationTopic(AutoNamedTopic):
    """
    モンテカルロ試行のトピック。

    - BATCH_FINISHED(done, total, hits)
    """

    BATCH_FINISHED = auto()


class ConfigTopic(AutoNamedTopic):
    """
    数値設定ストアのトピック。

    - UPDATE_CONFIG(state_path, new_value): ストアへの更新要求
    - REPLACE_CONFIG(new_state): ストア全体の置き換え要求
    - CONFIG_CHANGED(state_path, old_value, new_value): 更新後の通知
    """

    UPDATE_CONFIG = auto()
    REPLACE_CONFIG = auto()
    CONFIG_CHANGED = auto()
