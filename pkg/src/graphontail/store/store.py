# store.py - 数値設定を管理するストア

"""
src/graphontail/store/store.py

Pydantic モデルを用いた型安全な設定管理を提供します。
"""

from __future__ import annotations

import logging
from typing import Any, Generic, Type, TypeVar, cast

from pydantic import BaseModel, ValidationError

from graphontail.core.errors import ParameterError
from graphontail.core.pubsub_base import PubSubBase
from graphontail.store.settings import NumericsConfig
from graphontail.topic.topics import ConfigTopic

TState = TypeVar("TState", bound=BaseModel)

logger = logging.getLogger("graphontail.store")


class StateProxy(Generic[TState]):
    """
    Storeのstate属性に対する動的なパスアクセスを提供するプロキシ。

    ``store.update_state(store.state.oracle.restarts, 5)`` のように、
    文字列の代わりに属性アクセスで更新パスを指定できる。
    """

    def __init__(self, store: "Store[TState]", path: str = ""):
        self._store = store
        self._path = path

    def __getattr__(self, name: str) -> "StateProxy[TState]":
        new_path = f"{self._path}.{name}" if self._path else name

        # 存在チェック
        cur: Any = self._store._state
        for seg in new_path.split("."):
            if not hasattr(cur, seg):
                raise AttributeError(f"No such property: store.state.{new_path}")
            cur = getattr(cur, seg)

        return StateProxy(self._store, new_path)

    def __repr__(self) -> str:
        prefix = self._store._state_class.__name__
        return f"{prefix}.{self._path}" if self._path else prefix

    __str__ = __repr__


class Store(PubSubBase, Generic[TState]):
    """
    設定モデルを保持するジェネリックなStoreクラス。

    - get_current_state() で設定のディープコピーを取得
    - update_state() でパス指定の更新（型検証つき）
    - replace_state() で全体を置き換え
    - 変更は ``ConfigTopic.CONFIG_CHANGED`` で通知
    - ``ConfigTopic.UPDATE_CONFIG`` / ``REPLACE_CONFIG`` の要求も受け付ける
    """

    def __init__(self, initial_state_class: Type[TState]):
        """Store を初期化する。

        Args:
            initial_state_class: 管理対象となる ``BaseModel`` のサブクラス。
        """
        self._state_class = initial_state_class
        self._state = initial_state_class()
        super().__init__()

    def setup_subscriptions(self):
        self.subscribe(ConfigTopic.UPDATE_CONFIG, self.update_state)
        self.subscribe(ConfigTopic.REPLACE_CONFIG, self.replace_state)

    @property
    def state(self) -> TState:
        """状態への動的パスアクセス用プロキシを返す。"""
        return cast(TState, StateProxy(self))

    def get_current_state(self) -> TState:
        """現在の状態のディープコピーを返す。"""
        return self._state.model_copy(deep=True)

    def replace_state(self, new_state: TState) -> None:
        """状態オブジェクト全体を置き換え、変わったフィールドを通知する。

        Args:
            new_state: 新しい状態オブジェクト。

        Raises:
            TypeError: 型が管理対象と異なる場合。
        """
        if not isinstance(new_state, self._state_class):
            raise TypeError(f"new_state must be an instance of {self._state_class}")

        old_state = self._state
        self._state = new_state.model_copy(deep=True)

        for field_name in self._state_class.model_fields:
            old_value = getattr(old_state, field_name)
            new_value = getattr(self._state, field_name)
            if old_value != new_value:
                self._notify(field_name, old_value, new_value)

    def update_state(self, state_path: str, new_value: Any) -> None:
        """指定パスの属性を更新し、変更通知を送信する。

        Args:
            state_path: 変更対象の属性パス（例: ``"oracle.restarts"``）。
            new_value: 新しく設定する値。

        Raises:
            AttributeError: パスが存在しない場合。
            ParameterError: 値が型・範囲の検証に失敗した場合。
        """
        path = self._normalize_state_path(str(state_path))
        target_obj, attr_name, old_value = self._resolve_path(path)

        try:
            # validate_assignment=True のモデルでは代入時に検証される
            setattr(target_obj, attr_name, new_value)
        except ValidationError as exc:
            raise ParameterError(f"Invalid value for '{path}': {new_value!r}") from exc

        self._notify(path, old_value, getattr(target_obj, attr_name))

    def reset(self) -> None:
        """既定値に戻す。"""
        self.replace_state(self._state_class())

    def _notify(self, path: str, old_value: Any, new_value: Any) -> None:
        logger.debug(f"config '{path}': {old_value!r} -> {new_value!r}")
        self.publish(
            ConfigTopic.CONFIG_CHANGED,
            state_path=path,
            old_value=old_value,
            new_value=new_value,
        )

    def _normalize_state_path(self, state_path: str) -> str:
        """State型名プレフィックス（``StateProxy`` の repr）を取り除く。"""
        prefix = f"{self._state_class.__name__}."
        return state_path[len(prefix):] if state_path.startswith(prefix) else state_path

    def _resolve_path(self, path: str) -> tuple[Any, str, Any]:
        """
        属性パスを解決し、対象オブジェクト・属性名・現在値を返す。

        Args:
            path: 解析する属性パス。
        Returns:
            (対象オブジェクト, 属性名, 現在値)
        """
        segments = path.split(".")
        if not path or not segments:
            raise AttributeError("Empty path")

        attr_name = segments[-1]
        current: Any = self._state
        for segment in segments[:-1]:
            if not hasattr(current, segment):
                raise AttributeError(f"No such attribute: {segment} in path {path}")
            current = getattr(current, segment)

        if not hasattr(current, attr_name):
            raise AttributeError(f"No such attribute: {attr_name} in path {path}")

        return current, attr_name, getattr(current, attr_name)


# State 型ごとに生成した Store を保持する辞書
_stores: dict[Type[BaseModel], Store[Any]] = {}


def get_store(state_cls: Type[TState]) -> Store[TState]:
    """指定された ``state_cls`` 用の ``Store`` インスタンスを返す。

    同じ ``state_cls`` に対しては常に同じ ``Store`` を返し、
    初回呼び出し時のみ生成して内部で保持する。

    Args:
        state_cls: ``Store`` 生成に使用する状態モデルの型。

    Returns:
        ``state_cls`` に対応する ``Store`` インスタンス。
    """
    if state_cls not in _stores:
        _stores[state_cls] = Store(state_cls)
    return cast(Store[TState], _stores[state_cls])


def settings() -> NumericsConfig:
    """現在の数値設定（コピー）を返す。"""
    return get_store(NumericsConfig).get_current_state()
