# montecarlo.py - G(n,p) の部分グラフ密度の下側裾のモンテカルロ推定

"""
src/graphontail/empirics/montecarlo.py

G(n,p) を試行ごとに独立なシード列 ``default_rng([seed, i])`` で生成し、
t(H,G) <= q^{e(H)} となる割合を数えます。重点サンプリングは行わない
（小さい n での向きの確認用）。
"""

from __future__ import annotations

import csv
import io
import logging
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.stats import norm

from graphontail.core.errors import BudgetExceededError, ParameterError
from graphontail.core.pubsub_base import publish_event
from graphontail.entropy.functions import EntropyFn
from graphontail.graphs.graph import Graph
from graphontail.store.store import settings
from graphontail.topic.topics import SimulationTopic
from graphontail.utils.parallel import chunked, parallel_map
from graphontail.varoracle.solver import solve_lt

logger = logging.getLogger("graphontail.empirics")

CSV_COLUMNS = ("n", "p", "q", "trials", "hits", "p_hat", "ci_lo", "ci_hi", "predicted_rate")


class TailEstimate(BaseModel):
    """
    P(t(H, G(n,p)) <= q^{e(H)}) の推定値。

    Attributes:
        threshold_ratio: q / p。
        p_hat: hits / trials。
        ci_lo, ci_hi: Wilson 信頼区間。
        log_prob: log p_hat。hits = 0 なら打ち切り扱いで None。
        log_prob_hi: log ci_hi（打ち切り時も報告する上側）。
        censored: hits = 0。
        lt_value: 変分側の LT_p(H,q)（オラクル値）。
        predicted_rate: (n²/2)·lt_value。-log P の予測。
    """

    model_config = ConfigDict(frozen=True)

    n: int
    p: float
    q: float
    threshold_ratio: float
    trials: int
    hits: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    log_prob: float | None
    log_prob_lo: float | None
    log_prob_hi: float
    censored: bool
    lt_value: float | None = None
    predicted_rate: float | None = None

    @model_validator(mode="after")
    def _check(self) -> "TailEstimate":
        if not 0 <= self.hits <= self.trials:
            raise ValueError(f"hits must lie in [0, trials], got {self.hits}/{self.trials}")
        if not self.ci_lo <= self.p_hat <= self.ci_hi:
            raise ValueError("confidence interval must bracket the point estimate")
        return self

    @property
    def empirical_rate(self) -> float | None:
        """-(2/n²) log p_hat。打ち切り時は None。"""
        if self.log_prob is None:
            return None
        return -2.0 * self.log_prob / self.n**2

    def csv_row(self) -> list[Any]:
        return [
            self.n,
            repr(self.p),
            repr(self.q),
            self.trials,
            self.hits,
            repr(self.p_hat),
            repr(self.ci_lo),
            repr(self.ci_hi),
            "" if self.predicted_rate is None else repr(self.predicted_rate),
        ]


# --- グラフ生成と数え上げ ----------------------------------------------------


def sample_adjacency(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """G(n,p) の隣接行列（int64、対角 0）。"""
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return (upper | upper.T).astype(np.int64)


class HomomorphismCounter:
    """
    hom(H, G) を整数の einsum で数える。

    縮約順序は最初の呼び出しで決め、以降の同じ n に対して使い回す。
    頂点数・n の上限は設定値で、超える場合は例外を送出する。
    """

    def __init__(self, H: Graph):
        limit = settings().empirics_max_vertices
        if H.vertices > limit:
            raise BudgetExceededError(H.vertices, limit, "pattern vertices")
        self.H = H
        self._path: list | None = None
        self._n: int | None = None

    def _operands(self, A: np.ndarray) -> list[Any]:
        ones = np.ones(A.shape[0], dtype=np.int64)
        operands: list[Any] = []
        for vertex in range(self.H.vertices):
            operands += [ones, [vertex]]
        for a, b in self.H.edges:
            operands += [A, [a, b]]
        return operands + [[]]

    def count(self, A: np.ndarray) -> int:
        n = A.shape[0]
        limit = settings().empirics_max_n
        if n > limit:
            raise BudgetExceededError(n, limit, "host vertices")
        operands = self._operands(np.asarray(A, dtype=np.int64))
        if self._path is None or self._n != n:
            self._path = np.einsum_path(*operands, optimize="greedy")[0]
            self._n = n
        return int(np.einsum(*operands, optimize=self._path))

    def density(self, A: np.ndarray) -> float:
        return self.count(A) / float(A.shape[0]) ** self.H.vertices


def homomorphism_count(H: Graph, A: np.ndarray) -> int:
    """hom(H, G)。

    Raises:
        BudgetExceededError: v(H) または n が上限を超える。
    """
    return HomomorphismCounter(H).count(A)


def triangle_count_bitset(A: np.ndarray) -> int:
    """
    隣接ビット集合で三角形を数える。

    辺 i < j ごとに、共通近傍のうち j より大きい頂点の数を足す。
    """
    n = A.shape[0]
    rows = [sum(1 << int(j) for j in np.flatnonzero(A[i])) for i in range(n)]
    total = 0
    for i in range(n):
        row_i = rows[i]
        for j in range(i + 1, n):
            if row_i >> j & 1:
                total += ((row_i & rows[j]) >> (j + 1)).bit_count()
    return total


def sample_subgraph_density(H: Graph, n: int, p: float, seed: int) -> float:
    """
    G(n,p) を 1 つ生成し t(H, G) = hom(H, G) / n^{v(H)} を返す。

    Raises:
        ParameterError: n < v(H) または p が [0, 1] の外。
        BudgetExceededError: v(H) または n が上限を超える。
    """
    _check_sampling(H, n, p)
    counter = HomomorphismCounter(H)
    A = sample_adjacency(n, p, np.random.default_rng(seed))
    return counter.density(A)


def _check_sampling(H: Graph, n: int, p: float) -> None:
    if n < H.vertices:
        raise ParameterError(f"n must be at least v(H) = {H.vertices}, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")


def sample_densities(
    H: Graph,
    n: int,
    p: float,
    trials: int,
    seed: int,
    progress_threshold: float | None = None,
) -> np.ndarray:
    """
    試行 i ごとに ``default_rng([seed, i])`` で G(n,p) を生成した t(H,G) の列。

    バッチ単位でスレッド実行し、終了ごとに ``SimulationTopic.BATCH_FINISHED`` を送る。
    """
    _check_sampling(H, n, p)
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials!r}")
    cfg = settings()

    def run_batch(indices: range) -> np.ndarray:
        counter = HomomorphismCounter(H)
        return np.array(
            [counter.density(sample_adjacency(n, p, np.random.default_rng([seed, i]))) for i in indices]
        )

    batches = list(chunked(trials, cfg.empirics_batch))
    results = parallel_map(run_batch, batches, threads=cfg.threads)

    done = 0
    hits = 0
    for batch in results:
        done += batch.size
        if progress_threshold is not None:
            hits += int(np.count_nonzero(batch <= progress_threshold))
        publish_event(SimulationTopic.BATCH_FINISHED, done=done, total=trials, hits=hits)
    return np.concatenate(results)


# --- 推定 --------------------------------------------------------------------


def wilson_interval(hits: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """二項比率の Wilson スコア区間。"""
    if trials < 1:
        raise ParameterError("trials must be at least 1")
    z = float(norm.ppf(0.5 + confidence / 2.0))
    phat = hits / trials
    denom = 1.0 + z**2 / trials
    center = (phat + z**2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z**2 / (4 * trials**2)) / denom
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == trials else min(1.0, center + half)
    return lo, hi


def _predict(H: Graph, p: float, q: float, oracle_k: int | None) -> float | None:
    if oracle_k is None or not 0.0 < p < 1.0 or not 0.0 < q <= p:
        return None
    return solve_lt(H, EntropyFn.finite_p(p), q, oracle_k).objective


def _estimate(
    H: Graph,
    n: int,
    p: float,
    q: float,
    densities: np.ndarray,
    lt_value: float | None,
    confidence: float,
) -> TailEstimate:
    trials = int(densities.size)
    hits = int(np.count_nonzero(densities <= q**H.edge_count))
    lo, hi = wilson_interval(hits, trials, confidence)
    p_hat = hits / trials
    censored = hits == 0
    return TailEstimate(
        n=n,
        p=p,
        q=q,
        threshold_ratio=q / p if p > 0 else math.inf,
        trials=trials,
        hits=hits,
        p_hat=p_hat,
        ci_lo=lo,
        ci_hi=hi,
        log_prob=None if censored else math.log(p_hat),
        log_prob_lo=None if censored else math.log(lo),
        log_prob_hi=math.log(hi),
        censored=censored,
        lt_value=lt_value,
        predicted_rate=None if lt_value is None else n**2 / 2.0 * lt_value,
    )


def lower_tail_estimate(
    H: Graph,
    n: int,
    p: float,
    q: float,
    trials: int,
    seed: int,
    oracle_k: int | None = 4,
    confidence: float = 0.95,
) -> TailEstimate:
    """
    P(t(H, G(n,p)) <= q^{e(H)}) を素朴なモンテカルロで推定する。

    Args:
        oracle_k: 予測値に使うオラクルのブロック数。None なら予測しない。

    Returns:
        TailEstimate: hits = 0 のときは ``censored`` で上側の区間のみ意味を持つ。
    """
    if not 0.0 < q <= 1.0:
        raise ParameterError(f"q must lie in (0, 1], got {q!r}")
    densities = sample_densities(H, n, p, trials, seed, progress_threshold=q**H.edge_count)
    estimate = _estimate(H, n, p, q, densities, _predict(H, p, q, oracle_k), confidence)
    logger.info(f"lower_tail_estimate: n={n}, p={p!r}, q={q!r}, hits={estimate.hits}/{trials}")
    return estimate


def tail_curve(
    H: Graph,
    n: int,
    p: float,
    qs: Sequence[float],
    trials: int,
    seed: int,
    oracle_k: int | None = None,
    confidence: float = 0.95,
) -> list[TailEstimate]:
    """同じ標本集合を複数の q で閾値処理する（共通乱数）。q の大小で推定値は単調になる。"""
    if not qs:
        raise ParameterError("qs must not be empty")
    for q in qs:
        if not 0.0 < q <= 1.0:
            raise ParameterError(f"q must lie in (0, 1], got {q!r}")
    densities = sample_densities(H, n, p, trials, seed, progress_threshold=max(qs) ** H.edge_count)
    return [_estimate(H, n, p, q, densities, _predict(H, p, q, oracle_k), confidence) for q in qs]


def estimates_to_csv(estimates: Sequence[TailEstimate], path: str | Path | None = None) -> str:
    """``n,p,q,trials,hits,p_hat,ci_lo,ci_hi,predicted_rate`` の CSV 文字列（path があれば書き出す）。"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for estimate in estimates:
        writer.writerow(estimate.csv_row())
    text = buffer.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="ascii")
    return text
