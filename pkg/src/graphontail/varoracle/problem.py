# problem.py - k ブロック離散化した下側裾問題

"""
src/graphontail/varoracle/problem.py

等しい測度の k ブロックを持つステップグラフォンの上三角 k(k+1)/2 個の値を
変数とし、目的関数 E[entropy(W)] と制約 t(H,W) の値・勾配を与えます。
"""

from __future__ import annotations

import numpy as np

from graphontail.entropy.functions import EntropyFn
from graphontail.graphs.graph import Graph
from graphontail.stepkernel.density import density_values, derivative_values
from graphontail.stepkernel.kernel import StepGraphon


class LowerTailProblem:
    """minimize E[entropy(W)] subject to t(H,W) <= tau, floor <= W <= upper。

    Args:
        H: 部分グラフ。
        entropy: I_p または h（order 0）。
        tau: 制約の右辺 target^{e(H)}。
        k: ブロック数。
        floor: 変数の下限（h' の発散を避ける）。
    """

    def __init__(self, H: Graph, entropy: EntropyFn, tau: float, k: int, floor: float):
        self.H = H
        self.entropy = entropy
        self.gradient_fn = entropy.derivative(1)
        self.tau = tau
        self.k = k
        self.m = H.edge_count
        self.floor = floor
        self.upper = entropy.upper_bound
        self.measures = np.full(k, 1.0 / k)

        self.rows, self.cols = np.triu_indices(k)
        # 上三角の 1 変数が担う測度（非対角は 2 ブロック分）
        mu = self.measures
        self.weights = mu[self.rows] * mu[self.cols] * np.where(self.rows == self.cols, 1.0, 2.0)

    @property
    def size(self) -> int:
        return self.rows.size

    @property
    def bounds(self) -> list[tuple[float, float]]:
        return [(self.floor, self.upper)] * self.size

    def to_matrix(self, x: np.ndarray) -> np.ndarray:
        M = np.empty((self.k, self.k))
        M[self.rows, self.cols] = x
        M[self.cols, self.rows] = x
        return M

    def from_matrix(self, M: np.ndarray) -> np.ndarray:
        return np.asarray(M, dtype=float)[self.rows, self.cols]

    def to_graphon(self, x: np.ndarray) -> StepGraphon:
        return StepGraphon(measures=self.measures, values=np.clip(self.to_matrix(x), 0.0, 1.0))

    def objective(self, x: np.ndarray) -> float:
        return float(self.weights @ self.entropy(np.clip(x, 0.0, self.upper)))

    def objective_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        xs = np.clip(x, self.floor, self.upper)
        grad = self.weights * self.gradient_fn(np.minimum(xs, np.nextafter(self.upper, 0.0)))
        return self.objective(x), grad

    def density(self, x: np.ndarray) -> float:
        return density_values(self.H, self.measures, self.to_matrix(x))

    def density_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        M = self.to_matrix(x)
        D = derivative_values(self.H, self.measures, M)
        return density_values(self.H, self.measures, M), self.weights * D[self.rows, self.cols]

    def feasible(self, x: np.ndarray) -> bool:
        return self.density(x) <= self.tau * (1.0 + 1e-12)

    def repair(self, x: np.ndarray) -> np.ndarray:
        """t(H, sW) = s^m t(H, W) を使って制約を厳密に満たすよう縮める。"""
        x = np.clip(x, 0.0, self.upper)
        t = self.density(x)
        if t > self.tau:
            x = x * (self.tau / t) ** (1.0 / self.m)
            # 丸めで残る超過分
            while self.density(x) > self.tau:
                x = x * (1.0 - 1e-15)
        return x
