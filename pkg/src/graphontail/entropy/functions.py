# functions.py - 相対エントロピー I_p と疎極限 h

"""
src/graphontail/entropy/functions.py

I_p(x) = x log(x/p) + (1-x) log((1-x)/(1-p)) と h(x) = x log x - x + 1、
およびその 1 階・2 階導関数。スカラーでも numpy 配列でも評価できます。

x log x は ``scipy.special.xlogy`` で評価するので x = 0 で 0 を返し、NaN にはならない。
"""

from __future__ import annotations

from enum import StrEnum
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.special import xlog1py, xlogy

from graphontail.core.errors import DomainError, ParameterError

Order = Literal[0, 1, 2]


def _as_array(x: ArrayLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("entropy evaluated at NaN")
    return arr, arr.ndim == 0


def _out(value: np.ndarray, scalar: bool):
    return float(value) if scalar else value


def _check_p(p: float) -> None:
    if not (0.0 < p < 1.0):
        raise ParameterError(f"p must satisfy 0 < p < 1, got {p!r}")


def relative_entropy(p: float, x: ArrayLike, order: Order = 0):
    """相対エントロピー I_p とその導関数。

    Args:
        p: 0 < p < 1。
        x: 評価点。order 0 は [0, 1]、order 1・2 は (0, 1)。
        order: 0 なら I_p(x)、1 なら log(x(1-p)/(p(1-x)))、2 なら 1/(x(1-x))。

    Returns:
        スカラー入力なら float、配列入力なら同形の配列。

    Raises:
        ParameterError: p が範囲外。
        DomainError: x が定義域外。
    """
    _check_p(p)
    arr, scalar = _as_array(x)

    if order == 0:
        if np.any((arr < 0.0) | (arr > 1.0)):
            raise DomainError(f"I_p is defined on [0, 1], got {x!r}")
        # (1-x) log((1-x)/(1-p)) = (1-x) log1p((p-x)/(1-p))
        value = xlogy(arr, arr / p) + xlog1py(1.0 - arr, (p - arr) / (1.0 - p))
    elif order in (1, 2):
        if np.any((arr <= 0.0) | (arr >= 1.0)):
            raise DomainError(f"I_p derivatives need 0 < x < 1, got {x!r}")
        if order == 1:
            value = np.log(arr) - np.log(p) + np.log1p(-p) - np.log1p(-arr)
        else:
            value = 1.0 / (arr * (1.0 - arr))
    else:
        raise ParameterError(f"order must be 0, 1 or 2, got {order!r}")

    return _out(value, scalar)


def sparse_entropy(x: ArrayLike, order: Order = 0):
    """疎極限のエントロピー h とその導関数。

    Args:
        x: 評価点。order 0 は x >= 0（h(0) = 1）、order 1・2 は x > 0。
        order: 0 なら x log x - x + 1、1 なら log x、2 なら 1/x。

    Raises:
        DomainError: x が定義域外。
    """
    arr, scalar = _as_array(x)

    if order == 0:
        if np.any(arr < 0.0):
            raise DomainError(f"h is defined for x >= 0, got {x!r}")
        value = xlogy(arr, arr) - arr + 1.0
    elif order in (1, 2):
        if np.any(arr <= 0.0):
            raise DomainError(f"h derivatives need x > 0, got {x!r}")
        value = np.log(arr) if order == 1 else 1.0 / arr
    else:
        raise ParameterError(f"order must be 0, 1 or 2, got {order!r}")

    return _out(value, scalar)


class EntropyKind(StrEnum):
    FINITE_P = "finite_p"
    SPARSE = "sparse"


class EntropyFn(BaseModel):
    """
    エントロピー関数（とその導関数）を値として持ち回るためのモデル。

    呼び出し可能なので ``expect(W, EntropyFn.sparse())`` のように渡せる。

    Attributes:
        kind: ``finite_p`` なら I_p、``sparse`` なら h。
        p: finite_p のときのみ必須。
        order: 評価する導関数の階数。
    """

    model_config = ConfigDict(frozen=True)

    kind: EntropyKind
    p: float | None = None
    order: Order = 0

    @model_validator(mode="after")
    def _check(self) -> "EntropyFn":
        if self.kind is EntropyKind.FINITE_P:
            if self.p is None:
                raise ValueError("finite_p entropy needs p")
            _check_p(self.p)
        elif self.p is not None:
            raise ValueError("sparse entropy takes no p")
        return self

    @classmethod
    def finite_p(cls, p: float, order: Order = 0) -> "EntropyFn":
        return cls(kind=EntropyKind.FINITE_P, p=p, order=order)

    @classmethod
    def sparse(cls, order: Order = 0) -> "EntropyFn":
        return cls(kind=EntropyKind.SPARSE, order=order)

    def derivative(self, order: Order = 1) -> "EntropyFn":
        return self.model_copy(update={"order": order})

    @property
    def upper_bound(self) -> float:
        """最小化元が取りうる値の上限（finite_p なら p、sparse なら 1）。"""
        return float(self.p) if self.kind is EntropyKind.FINITE_P else 1.0

    def __call__(self, x: ArrayLike):
        if self.kind is EntropyKind.FINITE_P:
            return relative_entropy(self.p, x, self.order)
        return sparse_entropy(x, self.order)

    def __str__(self) -> str:
        name = f"I_{self.p}" if self.kind is EntropyKind.FINITE_P else "h"
        return name + "'" * self.order
