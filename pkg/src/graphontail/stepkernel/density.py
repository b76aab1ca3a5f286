# density.py - 準同型密度 t(H,W) と汎関数微分 t'(H,W)

"""
src/graphontail/stepkernel/density.py

ステップカーネル上の準同型密度を厳密に計算します。

ブロック割り当て φ: V(H) -> [k] に関する和は、頂点ごとに 1 つの添字を持つ
``numpy.einsum`` の縮約として評価する（項の列挙と同じ値を、k^v より
はるかに少ない演算で得る）。予算 k^v を超える場合は近似せずに例外を送出する。
"""

from __future__ import annotations

import logging
from typing import Any, Callable

import numpy as np

from graphontail.core.errors import BudgetExceededError, DomainError
from graphontail.graphs.graph import Graph
from graphontail.stepkernel.kernel import StepKernel
from graphontail.store.store import settings

logger = logging.getLogger("graphontail.stepkernel")


def check_budget(k: int, exponent: int, budget: int | None = None) -> None:
    """k**exponent が予算内かを確かめる。

    Raises:
        BudgetExceededError: 予算超過。
    """
    limit = settings().density_budget if budget is None else budget
    required = float(k) ** exponent
    if required > limit:
        raise BudgetExceededError(required, limit)


def density_values(H: Graph, measures: np.ndarray, values: np.ndarray) -> float:
    """配列を直接受け取る t(H,W)。予算チェックはしない。"""
    operands: list[Any] = []
    for vertex in range(H.vertices):
        operands += [measures, [vertex]]
    for a, b in H.edges:
        operands += [values, [a, b]]
    return float(np.einsum(*operands, [], optimize="greedy"))


def derivative_values(H: Graph, measures: np.ndarray, values: np.ndarray) -> np.ndarray:
    """配列を直接受け取る t'(H,W) のブロック値。予算チェックはしない。

    辺 ab ごとに、頂点 a, b を固定し辺 ab を除いた縮約 t_ab を取り、
    対称化して全辺で足し合わせる。
    """
    k = measures.shape[0]
    ones = np.ones(k)
    total = np.zeros((k, k))
    for edge in H.edges:
        a, b = edge
        operands: list[Any] = [ones, [a], ones, [b]]
        for vertex in range(H.vertices):
            if vertex not in edge:
                operands += [measures, [vertex]]
        for other in H.edges:
            if other != edge:
                operands += [values, list(other)]
        t_ab = np.einsum(*operands, [a, b], optimize="greedy")
        total += 0.5 * (t_ab + t_ab.T)
    return total


def density(H: Graph, W: StepKernel, budget: int | None = None) -> float:
    """準同型密度 t(H,W) を厳密に求める。

    Args:
        H: 部分グラフ。
        W: ステップカーネル（符号付き可。その場合は負の値もありうる）。
        budget: 列挙予算 k^v(H) の上限。省略時は設定値（既定 10^8）。

    Returns:
        t(H,W)。

    Raises:
        BudgetExceededError: k^v(H) が予算を超える場合。
    """
    check_budget(W.k, H.vertices, budget)
    return density_values(H, W.measures, W.values)


def functional_derivative(H: Graph, W: StepKernel, budget: int | None = None) -> StepKernel:
    """汎関数微分 t'(H,W) = Σ_{ab∈E(H)} t_ab(H,W) を同じブロック上のカーネルとして返す。

    E[t'(H,W)·W] = e(H)·t(H,W) を満たす。

    Raises:
        BudgetExceededError: k^{v(H)-1} が予算を超える場合。
    """
    check_budget(W.k, max(H.vertices - 1, 1), budget)
    return StepKernel(measures=W.measures, values=derivative_values(H, W.measures, W.values))


def _apply(f: Callable, values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        try:
            out = np.asarray(f(values), dtype=float)
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != values.shape:
            # スカラー専用の関数
            out = np.vectorize(f, otypes=[float])(values)
    return out


def pointwise_map(W: StepKernel, f: Callable) -> StepKernel:
    """ブロック値に f を成分ごとに適用する。ブロック構造は変わらない。"""
    return StepKernel(measures=W.measures, values=_apply(f, W.values))


def expect(W: StepKernel, f: Callable, allow_infinite: bool = False) -> float:
    """E[f(W)] = Σ_{i,j} μ_i μ_j f(w_ij)。

    Args:
        W: ステップカーネル。
        f: スカラー関数（numpy 配列を受け取れるならそのまま適用）。
        allow_infinite: True なら ±inf を極限規約として許す（例: log 0 = -inf）。

    Raises:
        DomainError: f がブロック値で定義されない（NaN、または許可されない inf）。
    """
    vals = _apply(f, W.values)
    if np.any(np.isnan(vals)) or (not allow_infinite and np.any(np.isinf(vals))):
        raise DomainError(f"{getattr(f, '__name__', f)} is undefined at a block value")
    with np.errstate(invalid="ignore"):
        result = float(W.measures @ vals @ W.measures)
    if np.isnan(result):
        raise DomainError("expectation is undefined (inf - inf)")
    return result
