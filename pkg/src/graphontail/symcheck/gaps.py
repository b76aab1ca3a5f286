# gaps.py - 接線条件のギャップ関数

"""
src/graphontail/symcheck/gaps.py

定数グラフォンの最小性を示す接線不等式を「左辺 - 右辺」の形で表した関数群。
値が非負なら不等式が成り立つ。いずれもベクトル化されている。
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, model_validator

from graphontail.core.errors import DomainError, ParameterError
from graphontail.entropy.functions import relative_entropy, sparse_entropy


class TangentGap(BaseModel, ABC):
    """ギャップ関数の基底クラス。``gap(x)`` で評価する。"""

    model_config = ConfigDict(frozen=True)

    kind: str

    @property
    @abstractmethod
    def domain(self) -> tuple[float, float]:
        """評価できる閉区間（h_exp のみ左端は開）。"""

    @abstractmethod
    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """定義域チェック済みの配列に対する評価。"""

    def _in_domain(self, x: np.ndarray) -> np.ndarray:
        lo, hi = self.domain
        return (x >= lo) & (x <= hi)

    def __call__(self, x: ArrayLike):
        arr = np.asarray(x, dtype=float)
        if not np.all(self._in_domain(arr)):
            raise DomainError(f"{self.kind} gap is defined on {self.domain}, got {x!r}")
        value = self.evaluate(arr)
        return float(value) if arr.ndim == 0 else value


class LtK3Gap(TangentGap):
    """有限 p の三角形下側裾:
    f(x) = I_p(x) - I_p(q) + (I_p'(q)/2q)((2q-x)_+^2 - q^2)。
    """

    kind: str = "lt_k3"
    p: float
    q: float

    @model_validator(mode="after")
    def _check(self) -> "LtK3Gap":
        if not (0.0 < self.q <= self.p < 1.0):
            raise ValueError(f"need 0 < q <= p < 1, got p={self.p!r}, q={self.q!r}")
        return self

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        p, q = self.p, self.q
        slope = relative_entropy(p, q, 1) / (2.0 * q)
        plus = np.maximum(2.0 * q - x, 0.0)
        return relative_entropy(p, x) - relative_entropy(p, q) + slope * (plus**2 - q**2)


class UtK3Gap(TangentGap):
    """三角形上側裾: x ↦ I_p(√x) の x = q² での接線が下から支えるか。

    y = √x で書き直して f(y) = I_p(y) - I_p(q) - (I_p'(q)/2q)(y^2 - q^2), y ∈ [0,1]。
    """

    kind: str = "ut_k3"
    p: float
    q: float

    @model_validator(mode="after")
    def _check(self) -> "UtK3Gap":
        if not (0.0 < self.p <= self.q < 1.0):
            raise ValueError(f"need 0 < p <= q < 1, got p={self.p!r}, q={self.q!r}")
        return self

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        p, q = self.p, self.q
        slope = relative_entropy(p, q, 1) / (2.0 * q)
        return relative_entropy(p, x) - relative_entropy(p, q) - slope * (x**2 - q**2)


class LtHK3Gap(TangentGap):
    """疎極限の三角形下側裾:
    f(x) = h(x) - h(r) + (h'(r)/2r)((2r-x)_+^2 - r^2)。
    """

    kind: str = "lt_h_k3"
    r: float

    @model_validator(mode="after")
    def _check(self) -> "LtHK3Gap":
        if not (0.0 < self.r <= 1.0):
            raise ValueError(f"need 0 < r <= 1, got r={self.r!r}")
        return self

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        r = self.r
        slope = sparse_entropy(r, 1) / (2.0 * r)
        plus = np.maximum(2.0 * r - x, 0.0)
        return sparse_entropy(x) - sparse_entropy(r) + slope * (plus**2 - r**2)


class HExpGap(TangentGap):
    """log x を変数とした h の接線:
    f(x) = h(x) - h(r) - r h'(r)(log x - log r)。
    """

    kind: str = "h_exp"
    r: float

    @model_validator(mode="after")
    def _check(self) -> "HExpGap":
        if not (0.0 < self.r <= 1.0):
            raise ValueError(f"need 0 < r <= 1, got r={self.r!r}")
        return self

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def _in_domain(self, x: np.ndarray) -> np.ndarray:
        return (x > 0.0) & (x <= 1.0)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.at_log(np.log(x))

    def at_log(self, log_x: ArrayLike) -> np.ndarray:
        """log x を直接受け取る版（x がアンダーフローする場合用）。"""
        log_x = np.asarray(log_x, dtype=float)
        r = self.r
        log_r = np.log(r)
        return sparse_entropy(np.exp(log_x)) - sparse_entropy(r) - r * log_r * (log_x - log_r)


_GAPS: dict[str, type[TangentGap]] = {
    "lt_k3": LtK3Gap,
    "ut_k3": UtK3Gap,
    "lt_h_k3": LtHK3Gap,
    "h_exp": HExpGap,
}


def gap_function(kind: str, **params: float) -> TangentGap:
    """名前とパラメータからギャップ関数を作る。

    Args:
        kind: ``lt_k3`` / ``ut_k3`` (p, q)、``lt_h_k3`` / ``h_exp`` (r)。

    Raises:
        ParameterError: 未知の kind、またはパラメータが範囲外。
    """
    key = kind.replace("-", "_")
    if key not in _GAPS:
        raise ParameterError(f"Unknown gap kind '{kind}'")
    try:
        return _GAPS[key](**params)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc


def tangent_gap(kind: TangentGap, x: ArrayLike):
    """ギャップ f(x) を返す。有限 p の kind では f(q) = 0 かつ f'(q) = 0。

    Raises:
        DomainError: x が定義域外。
    """
    return kind(x)
