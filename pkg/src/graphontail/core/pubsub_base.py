# pubsub_base.py - PubSub 基底クラスと進捗イベント発行

"""
src/graphontail/core/pubsub_base.py

計算ルーチンが進捗イベントを発行し、CLI などの購読側が受け取るための
Pub/Sub 基盤とデバッグログ切り替えを提供します。
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Any, Callable

from pubsub import pub

# パッケージ全体のロガーと PubSub 専用ロガー
_package_logger = logging.getLogger("graphontail")
_pubsub_logger = logging.getLogger("graphontail.pubsub")

_LOG_FORMAT = "[%(asctime)s] %(name)s - %(levelname)s - %(message)s"


def _format_payload(payload: dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in payload.items())


def publish_event(topic: str, **payload: Any) -> None:
    """ライブラリ関数から進捗イベントを発行する。

    同じトピックには常に同じキーワード引数の組を渡すこと（pypubsub は
    最初のメッセージから引数仕様を決める）。

    Args:
        topic: ``AutoNamedTopic`` メンバーまたはトピック文字列。
        **payload: メッセージ本体。
    """
    if _pubsub_logger.isEnabledFor(logging.DEBUG):
        args_str = _format_payload(payload)
        _pubsub_logger.debug(
            f"PUBLISH: topic='{topic}'" + (f" with args: {args_str}" if args_str else "")
        )
    pub.sendMessage(str(topic), **payload)


class PubSubBase(ABC):
    """
    イベントを購読する側の基底クラス。

    - setup_subscriptions() で購読設定を行う
    - subscribe()/publish()/unsubscribe()/teardown() で購読を管理
    - with 文で使うと抜けるときに全購読を解除する
    """

    def __init__(self, *args, **kwargs):
        self._subscriptions: list[tuple[str, Callable]] = []
        self.setup_subscriptions()

    def subscribe(self, topic: str, handler: Callable, **kwargs) -> None:
        pub.subscribe(handler, str(topic), **kwargs)
        self._subscriptions.append((str(topic), handler))
        _pubsub_logger.debug(
            f"SUBSCRIBE: {self.__class__.__name__} -> topic='{topic}', handler={handler.__name__}"
        )

    def publish(self, topic: str, **kwargs) -> None:
        publish_event(topic, **kwargs)

    def unsubscribe(self, topic: str, handler: Callable) -> None:
        pub.unsubscribe(handler, str(topic))
        self._subscriptions = [
            (t, h) for t, h in self._subscriptions if not (t == str(topic) and h == handler)
        ]
        _pubsub_logger.debug(
            f"UNSUBSCRIBE: {self.__class__.__name__} -> topic='{topic}', handler={handler.__name__}"
        )

    def teardown(self) -> None:
        """全ての購読を解除する。"""
        if self._subscriptions:
            _pubsub_logger.debug(
                f"UNSUBSCRIBE_ALL: {self.__class__.__name__} -> {len(self._subscriptions)} subscriptions"
            )
        for topic, handler in list(self._subscriptions):
            pub.unsubscribe(handler, topic)
        self._subscriptions.clear()

    @abstractmethod
    def setup_subscriptions(self) -> None:
        """
        継承先で購読設定を行うためのメソッド。

        例:
            class Reporter(PubSubBase):
                def setup_subscriptions(self):
                    self.subscribe(SolverTopic.RESTART_FINISHED, self.on_restart)
        """

    def __enter__(self):
        return self

    def __exit__(self, *exc_info) -> None:
        self.teardown()


def enable_debug_logging(level: int = logging.DEBUG) -> None:
    """
    graphontail 全体のデバッグログを有効化する。

    Args:
        level: ログレベル（デフォルト: DEBUG）

    使用例:
        from graphontail import enable_debug_logging
        enable_debug_logging()
    """
    _package_logger.setLevel(level)

    # ハンドラーが未設定の場合はコンソールハンドラーを追加
    if not _package_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_LOG_FORMAT, datefmt="%H:%M:%S"))
        _package_logger.addHandler(handler)

    _package_logger.debug("graphontail debug logging enabled")


def disable_debug_logging() -> None:
    """graphontail のデバッグログを無効化する。"""
    _package_logger.debug("graphontail debug logging disabled")
    _package_logger.setLevel(logging.WARNING)
