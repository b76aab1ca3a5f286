# kernel.py - [0,1]² 上の対称ステップ関数

"""
src/graphontail/stepkernel/kernel.py

ブロック測度と対称な値行列で表される符号付きカーネル ``StepKernel`` と、
値が [0,1] に収まるグラフォン ``StepGraphon`` を定義します。
どちらも生成後は不変（配列は書き込み不可）です。
"""

from __future__ import annotations

import json
from typing import Any, Callable

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from graphontail.core.errors import ParameterError
from graphontail.store.store import settings


def _frozen_array(value: Any, ndim: int, name: str) -> np.ndarray:
    arr = np.array(value, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class StepKernel(BaseModel):
    """
    k 個のブロックを持つ対称ステップカーネル。

    Attributes:
        measures: 正のブロック測度（総和 1）。
        values: k×k の対称行列。符号付きでもよい。
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    measures: np.ndarray
    values: np.ndarray

    @field_validator("measures", mode="before")
    @classmethod
    def _measures_array(cls, value):
        return _frozen_array(value, 1, "measures")

    @field_validator("values", mode="before")
    @classmethod
    def _values_array(cls, value):
        return _frozen_array(value, 2, "values")

    @model_validator(mode="after")
    def _check_kernel(self) -> "StepKernel":
        k = self.measures.shape[0]
        if k < 1:
            raise ValueError("a step kernel needs at least one block")
        if self.values.shape != (k, k):
            raise ValueError(f"values must be {k}x{k}, got {self.values.shape}")
        if np.any(self.measures <= 0.0):
            raise ValueError("block measures must be strictly positive")
        if abs(float(self.measures.sum()) - 1.0) > settings().measure_tol:
            raise ValueError(f"block measures must sum to 1, got {self.measures.sum()!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        if not np.array_equal(self.values, self.values.T):
            raise ValueError("values must be exactly symmetric")
        return self

    @field_serializer("measures", "values")
    def _to_list(self, arr: np.ndarray) -> list:
        return arr.tolist()

    @property
    def k(self) -> int:
        """ブロック数。"""
        return int(self.measures.shape[0])

    @property
    def block_measures(self) -> np.ndarray:
        return self.measures

    @classmethod
    def uniform(cls, values: ArrayLike):
        """等しい測度の k ブロックで作る。"""
        arr = np.asarray(values, dtype=float)
        k = arr.shape[0]
        return cls(measures=np.full(k, 1.0 / k), values=arr)

    def to_dict(self) -> dict[str, list]:
        return {"measures": self.measures.tolist(), "values": self.values.tolist()}

    def to_json(self) -> str:
        """``{"measures": [...], "values": [[...]]}`` 形式の JSON 文字列。"""
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        return cls(measures=data["measures"], values=data["values"])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepKernel):
            return NotImplemented
        return np.array_equal(self.measures, other.measures) and np.array_equal(
            self.values, other.values
        )

    def __hash__(self) -> int:
        return hash((self.measures.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(measures={self.measures.tolist()}, values={self.values.tolist()})"


class StepGraphon(StepKernel):
    """値がすべて [0,1] に入るステップカーネル。"""

    @model_validator(mode="after")
    def _check_unit_range(self) -> "StepGraphon":
        if np.any(self.values < 0.0) or np.any(self.values > 1.0):
            raise ValueError("graphon values must lie in [0, 1]")
        return self


def as_graphon(W: StepKernel) -> StepGraphon:
    """カーネルをグラフォンとして検証し直す。

    Raises:
        ParameterError: 値が [0,1] に収まらない場合。
    """
    if isinstance(W, StepGraphon):
        return W
    try:
        return StepGraphon(measures=W.measures, values=W.values)
    except ValueError as exc:
        raise ParameterError(f"not a graphon: {exc}") from exc


def constant(c: float) -> StepGraphon:
    """定数グラフォン W ≡ c。"""
    return StepGraphon(measures=[1.0], values=[[c]])


def constant_kernel(c: float) -> StepKernel:
    """定数カーネル（符号付き可）。"""
    return StepKernel(measures=[1.0], values=[[c]])


def bip(a: float, b: float) -> StepGraphon:
    """BIP_{a,b}: 対角ブロックが a、非対角ブロックが b の 2 ブロックグラフォン。"""
    return StepGraphon(measures=[0.5, 0.5], values=[[a, b], [b, a]])


def refine_uniform(W: StepKernel, factor: int) -> StepKernel:
    """各ブロックを ``factor`` 個の等しい部分に分割する（値は複製）。"""
    if factor < 1:
        raise ParameterError(f"factor must be >= 1, got {factor}")
    measures = np.repeat(W.measures / factor, factor)
    values = np.repeat(np.repeat(W.values, factor, axis=0), factor, axis=1)
    return type(W)(measures=measures, values=values)


def split_block(W: StepKernel, index: int) -> StepKernel:
    """ブロック ``index`` を測度が半分の 2 ブロックに分ける。"""
    if not 0 <= index < W.k:
        raise ParameterError(f"block index {index} out of range")
    order = np.insert(np.arange(W.k), index, index)
    measures = W.measures[order].copy()
    measures[index] /= 2.0
    measures[index + 1] /= 2.0
    return type(W)(measures=measures, values=W.values[np.ix_(order, order)])


def permute_blocks(W: StepKernel, perm: ArrayLike) -> StepKernel:
    perm = np.asarray(perm, dtype=int)
    if sorted(perm.tolist()) != list(range(W.k)):
        raise ParameterError("perm must be a permutation of the block indices")
    return type(W)(measures=W.measures[perm], values=W.values[np.ix_(perm, perm)])


def common_refinement(U: StepKernel, W: StepKernel) -> tuple[StepKernel, StepKernel]:
    """2 つのカーネルを共通のブロック分割の上に載せ直す。

    Returns:
        同じ ``measures`` を持つ (U', W')。値は元のカーネルと同じ関数を表す。
    """
    cu = np.concatenate([[0.0], np.cumsum(U.measures)])
    cw = np.concatenate([[0.0], np.cumsum(W.measures)])
    cu[-1] = cw[-1] = 1.0

    cuts = np.unique(np.concatenate([cu, cw]))
    # 丸めで生じるごく細い断片はまとめる
    keep = np.concatenate([[True], np.diff(cuts) > 1e-14])
    cuts = cuts[keep]
    cuts[-1] = 1.0

    pieces = np.diff(cuts)
    mids = cuts[:-1] + pieces / 2.0
    iu = np.clip(np.searchsorted(cu, mids, side="right") - 1, 0, U.k - 1)
    iw = np.clip(np.searchsorted(cw, mids, side="right") - 1, 0, W.k - 1)

    measures = pieces / pieces.sum()
    return (
        type(U)(measures=measures, values=U.values[np.ix_(iu, iu)]),
        type(W)(measures=measures, values=W.values[np.ix_(iw, iw)]),
    )


def combine(
    U: StepKernel, W: StepKernel, op: Callable[[np.ndarray, np.ndarray], np.ndarray]
) -> StepKernel:
    """共通細分の上でブロック値に二項演算 ``op`` を適用したカーネルを返す。"""
    Ur, Wr = common_refinement(U, W)
    return StepKernel(measures=Ur.measures, values=op(Ur.values, Wr.values))
