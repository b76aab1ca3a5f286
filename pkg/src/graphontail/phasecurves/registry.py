# registry.py - 出力可能な関数・曲線のレジストリ

"""
src/graphontail/phasecurves/registry.py

``emit_curve`` が名前で引けるように、ギャップ関数と相境界曲線を登録する
シングルトンレジストリと ``@curve_function`` デコレータ。
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from graphontail.core.errors import UnknownIdentifierError
from graphontail.store.store import settings
from graphontail.utils.parallel import parallel_map

# (x 格子, パラメータ) -> (x, y) 行の列
Evaluator = Callable[..., list[tuple[float, float]]]
# パラメータ -> 既定の定義域
DomainFn = Callable[..., tuple[float, float]]


class CurveFunctionMeta(BaseModel):
    """登録された関数のメタ情報。

    Attributes:
        id: 識別子（例: ``lt_k3_gap``）。
        description: 説明。
        params: 必須パラメータ名。
        evaluate: 格子上で評価して (x, y) 行を返す関数。
        domain: パラメータから既定の x 区間を返す関数。
        parametric: True なら行をパラメータ順のまま出力する（x で並べ替えない）。
        default_spacing: 既定の格子の取り方。
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: str
    description: str
    params: tuple[str, ...]
    evaluate: Evaluator
    domain: DomainFn
    parametric: bool = False
    default_spacing: str = "linear"


class CurveRegistry:
    """曲線・ギャップ関数を管理するレジストリ"""

    _entries: dict[str, CurveFunctionMeta] = {}

    @classmethod
    def register(cls, meta: CurveFunctionMeta) -> None:
        cls._entries[meta.id] = meta

    @classmethod
    def get(cls, identifier: str) -> CurveFunctionMeta:
        key = identifier.replace("-", "_")
        if key not in cls._entries:
            raise UnknownIdentifierError(
                f"Unknown curve identifier '{identifier}'. Known: {', '.join(sorted(cls._entries))}"
            )
        return cls._entries[key]

    @classmethod
    def list(cls) -> list[CurveFunctionMeta]:
        return sorted(cls._entries.values(), key=lambda m: m.id)

    @classmethod
    def clear(cls) -> None:
        """テスト用などでレジストリをクリア"""
        cls._entries.clear()


def curve_function(
    identifier: str,
    params: tuple[str, ...] = (),
    domain: DomainFn | None = None,
    parametric: bool = False,
    default_spacing: str = "linear",
    vectorized: bool = True,
):
    """関数を曲線レジストリに登録するデコレータ。

    Args:
        identifier: ``emit_curve`` で使う名前。
        params: 必須パラメータ名。
        domain: 既定の x 区間を返す関数（省略時は (0, 1)）。
        parametric: x が曲線のパラメータで、出力 x は関数が返す場合に True。
        default_spacing: ``linear`` / ``log`` / ``mixed``。
        vectorized: True なら関数は x 配列を一度に受け取る。False なら 1 点ずつ。

    デコレートされる関数は ``f(xs, **params)`` の形で、vectorized なら y 配列、
    parametric なら (x, y) の組の列、それ以外は 1 点ごとの y を返す。
    """

    def decorator(func: Callable):
        def evaluate(xs: np.ndarray, **kwargs) -> list[tuple[float, float]]:
            if vectorized:
                ys = func(xs, **kwargs)
                rows = list(zip(np.asarray(xs).tolist(), np.asarray(ys, dtype=float).tolist()))
            else:
                rows = parallel_map(
                    lambda x: func(float(x), **kwargs), list(xs), threads=settings().threads
                )
                if not parametric:
                    rows = list(zip(np.asarray(xs).tolist(), rows))
            return [(float(x), float(y)) for x, y in rows]

        CurveRegistry.register(
            CurveFunctionMeta(
                id=identifier,
                description=(func.__doc__ or "").strip().splitlines()[0] if func.__doc__ else "",
                params=params,
                evaluate=evaluate,
                domain=domain or (lambda **_: (0.0, 1.0)),
                parametric=parametric,
                default_spacing=default_spacing,
            )
        )
        return func

    return decorator
