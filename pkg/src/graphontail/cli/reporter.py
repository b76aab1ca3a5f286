# reporter.py - 進捗イベントをログに流す購読者

"""進捗イベントを購読してログに書き出す ``ProgressReporter``。"""

from __future__ import annotations

import logging
from typing import Any

from graphontail.core.pubsub_base import PubSubBase
from graphontail.topic.topics import ConfigTopic, CurveTopic, SearchTopic, SimulationTopic, SolverTopic

logger = logging.getLogger("graphontail.cli")


class ProgressReporter(PubSubBase):
    """ライブラリが発行する進捗イベントをログに変換する。

    with 文で使うと抜けるときに購読を解除する。受け取ったイベント数は
    ``counts`` に残る。
    """

    def __init__(self, *args, **kwargs):
        self.counts: dict[str, int] = {}
        super().__init__(*args, **kwargs)

    def setup_subscriptions(self) -> None:
        self.subscribe(SolverTopic.RESTART_FINISHED, self.on_restart_finished)
        self.subscribe(SolverTopic.SOLVE_FINISHED, self.on_solve_finished)
        self.subscribe(SearchTopic.CRITICAL_TRIPLE_READY, self.on_critical_triple)
        self.subscribe(SearchTopic.WITNESS_FOUND, self.on_witness_found)
        self.subscribe(CurveTopic.FILE_WRITTEN, self.on_file_written)
        self.subscribe(SimulationTopic.BATCH_FINISHED, self.on_batch_finished)
        self.subscribe(ConfigTopic.CONFIG_CHANGED, self.on_config_changed)

    def _count(self, topic: str) -> None:
        self.counts[topic] = self.counts.get(topic, 0) + 1

    def on_restart_finished(self, index: int, objective: float, converged: bool) -> None:
        self._count(SolverTopic.RESTART_FINISHED)
        logger.debug(f"restart {index}: objective={objective!r}, converged={converged}")

    def on_solve_finished(self, objective: float, restarts: int) -> None:
        self._count(SolverTopic.SOLVE_FINISHED)
        logger.info(f"solve finished after {restarts} restarts: objective={objective!r}")

    def on_critical_triple(self, a1: float, b1: float, r1: float) -> None:
        self._count(SearchTopic.CRITICAL_TRIPLE_READY)
        logger.info(f"critical triple: a1={a1!r}, b1={b1!r}, r1={r1!r}")

    def on_witness_found(self, kind: str, margin: float) -> None:
        self._count(SearchTopic.WITNESS_FOUND)
        logger.info(f"{kind} witness, margin={margin!r}")

    def on_file_written(self, identifier: str, path: str, rows: int) -> None:
        self._count(CurveTopic.FILE_WRITTEN)
        logger.info(f"{identifier}: {rows} rows -> {path}")

    def on_batch_finished(self, done: int, total: int, hits: int) -> None:
        self._count(SimulationTopic.BATCH_FINISHED)
        logger.info(f"simulated {done}/{total} graphs ({hits} hits)")

    def on_config_changed(self, state_path: str, old_value: Any, new_value: Any) -> None:
        self._count(ConfigTopic.CONFIG_CHANGED)
        logger.debug(f"setting {state_path}: {old_value!r} -> {new_value!r}")
