# certificates.py - レプリカ対称性の証明書チェッカー

"""
src/graphontail/symcheck/certificates.py

接線条件を数値的に確かめ、定数グラフォンが最小化元であることの十分条件が
成り立つかを ``Certificate`` として返します。

判定は 2 値（certified / inconclusive）で、inconclusive は十分条件が
満たされなかったことしか意味しない。対称性の破れの主張は breaking 側で扱う。
最小化元の一意性は再検証せず、最小性の証拠だけを記録する。
"""

from __future__ import annotations

import json
import logging
import math
from enum import StrEnum
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from graphontail.core.errors import ParameterError
from graphontail.core.numeric import scan_minimum
from graphontail.graphs.graph import Graph
from graphontail.store.store import settings
from graphontail.symcheck.gaps import HExpGap, LtHK3Gap, LtK3Gap, UtK3Gap

logger = logging.getLogger("graphontail.symcheck")


class Verdict(StrEnum):
    CERTIFIED = "certified"
    INCONCLUSIVE = "inconclusive"


class Certificate(BaseModel):
    """
    対称性チェックの判定と、その数値的証拠。

    Attributes:
        verdict: certified なら記録された最小ギャップは -1e-12 以上。
        condition_id: 検査した接線条件の名前。
        parameters: (p, q)、r、または (m, r)。
        method: ``single_point``（一点評価で足りる場合）か ``grid``。
        evidence: (x, gap) の格子。
        min_gap: 記録された最小ギャップ。
        argmin: 最小ギャップを与えた x。
        diagnostic: 補足（オーバーフロー等）。
    """

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    condition_id: str
    parameters: dict[str, Any]
    method: str
    evidence: list[tuple[float, float]] = Field(default_factory=list)
    min_gap: float
    argmin: float | None = None
    diagnostic: str | None = None

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=indent)


def _evidence_grid(gap: Callable, lo: float, hi: float, points: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(lo, hi, points)
    return xs, np.asarray(gap(xs), dtype=float)


def _pairs(xs: np.ndarray, ys: np.ndarray) -> list[tuple[float, float]]:
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def _thin(xs: np.ndarray, ys: np.ndarray, points: int) -> tuple[np.ndarray, np.ndarray]:
    if xs.size <= points:
        return xs, ys
    idx = np.unique(np.linspace(0, xs.size - 1, points).round().astype(int))
    return xs[idx], ys[idx]


def _single_point_certificate(
    condition_id: str,
    parameters: dict[str, Any],
    gap: Callable,
    x0: float,
    lo: float,
    hi: float,
) -> Certificate:
    """一点での評価で判定し、区間上の格子を証拠として付ける。"""
    cfg = settings()
    value = float(gap(x0))
    xs, ys = _evidence_grid(gap, lo, hi, cfg.evidence_points)
    i = int(np.argmin(ys))
    grid_min = float(ys[i])

    min_gap, argmin = (value, x0) if value <= grid_min else (grid_min, float(xs[i]))
    certified = min_gap >= -cfg.certificate_tol
    diagnostic = None
    if value >= -cfg.certificate_tol and not certified:
        diagnostic = f"condition holds at x={x0!r} but the evidence grid dips to {grid_min!r}"
        logger.warning(f"{condition_id} {parameters}: {diagnostic}")

    return Certificate(
        verdict=Verdict.CERTIFIED if certified else Verdict.INCONCLUSIVE,
        condition_id=condition_id,
        parameters=parameters,
        method="single_point",
        evidence=_pairs(xs, ys),
        min_gap=min_gap,
        argmin=argmin,
        diagnostic=diagnostic,
    )


def _grid_certificate(
    condition_id: str,
    parameters: dict[str, Any],
    gap: Callable,
    lo: float,
    hi: float,
) -> Certificate:
    """刻み ``grid_step`` の格子と局所精密化で最小ギャップを求めて判定する。"""
    cfg = settings()
    points = int(math.ceil((hi - lo) / cfg.grid_step)) + 1
    scan = scan_minimum(gap, lo, hi, points, refine=True, head_points=64)
    xs, ys = _thin(scan.xs, scan.values, cfg.evidence_points)

    return Certificate(
        verdict=Verdict.CERTIFIED if scan.min_value >= -cfg.certificate_tol else Verdict.INCONCLUSIVE,
        condition_id=condition_id,
        parameters=parameters,
        method="grid",
        evidence=_pairs(xs, ys),
        min_gap=scan.min_value,
        argmin=scan.x_min,
    )


def lt_k3_certificate(p: float, q: float) -> Certificate:
    """三角形の下側裾 LT_p(K_3, q) で W ≡ q が最小化元であることの十分条件を調べる。

    [0, p] 上で I_p(x) >= I_p(q) - (I_p'(q)/2q)((2q-x)_+^2 - q^2) を確かめる。
    p <= 1/2 では x = p での一点評価と同値なので、それで判定し格子は証拠として付ける。
    p > 1/2 では密な格子で判定する。

    Args:
        p: 0 < q <= p < 1。
        q: 閾値パラメータ。

    Raises:
        ParameterError: パラメータが範囲外。
    """
    if not (0.0 < q <= p < 1.0):
        raise ParameterError(f"lt_k3_certificate needs 0 < q <= p < 1, got p={p!r}, q={q!r}")

    gap = LtK3Gap(p=p, q=q)
    params = {"p": p, "q": q}
    if p <= 0.5:
        return _single_point_certificate("lt_k3_tangent", params, gap, p, 0.0, p)
    return _grid_certificate("lt_k3_tangent", params, gap, 0.0, p)


def ut_k3_certificate(p: float, q: float) -> Certificate:
    """三角形の上側裾で W ≡ q が最小化元であることの十分条件を調べる。

    x ↦ I_p(√x) の x = q² における接線がこの関数を下から支えるか
    （q² が凸包絡上にあるか）を [0,1] の格子で確かめる。

    Raises:
        ParameterError: 0 < p <= q < 1 でない場合。
    """
    if not (0.0 < p <= q < 1.0):
        raise ParameterError(f"ut_k3_certificate needs 0 < p <= q < 1, got p={p!r}, q={q!r}")
    return _grid_certificate("ut_k3_convex_minorant", {"p": p, "q": q}, UtK3Gap(p=p, q=q), 0.0, 1.0)


def lt_h_k3_certificate(r: float) -> Certificate:
    """疎極限 LT(K_3, r) の接線条件。x = 1 で成り立つことと同値。

    Raises:
        ParameterError: 0 < r <= 1 でない場合。
    """
    if not (0.0 < r <= 1.0):
        raise ParameterError(f"lt_h_k3_certificate needs 0 < r <= 1, got r={r!r}")
    return _single_point_certificate("lt_h_k3_tangent", {"r": r}, LtHK3Gap(r=r), 1.0, 0.0, 1.0)


def lt_h_general_certificate(H: Graph, r: float) -> Certificate:
    """一般の H に対する疎極限 LT(H, r) の十分条件。

    m = e(H) として最小化元は W >= c = r^{m r^{-m}} を満たすので、
    log x を変数とした h の接線条件を x = c で確かめ、r >= 1/e なら
    [c, 1] 全体に延びる。

    m r^{-m} が巨大（r が小さい）で c が表現できない場合は、
    診断を付けて inconclusive を返す。

    Raises:
        ParameterError: 0 < r < 1 でない、または e(H) = 0。
    """
    m = H.edge_count
    if not (0.0 < r < 1.0):
        raise ParameterError(f"lt_h_general_certificate needs 0 < r < 1, got r={r!r}")
    if m < 1:
        raise ParameterError("H must have at least one edge")

    params = {"m": m, "r": r}
    gap = HExpGap(r=r)
    log_r = math.log(r)

    # log c = m r^{-m} log r
    exponent = -m * log_r
    if exponent > 700.0 or math.log(m) + exponent + math.log(-log_r) > 700.0:
        return Certificate(
            verdict=Verdict.INCONCLUSIVE,
            condition_id="lt_h_exp_tangent",
            parameters=params,
            method="single_point",
            min_gap=float("-inf"),
            diagnostic="m*r^-m overflows; lower bound on W is numerically zero",
        )
    log_c = m * math.exp(exponent) * log_r

    value = float(gap.at_log(log_c))
    cfg = settings()
    xs = np.exp(np.linspace(log_c, 0.0, cfg.evidence_points))
    ys = np.asarray(gap.at_log(np.linspace(log_c, 0.0, cfg.evidence_points)), dtype=float)
    i = int(np.argmin(ys))

    min_gap, argmin = (value, math.exp(log_c)) if value <= ys[i] else (float(ys[i]), float(xs[i]))
    holds = min_gap >= -cfg.certificate_tol
    extends = r >= math.exp(-1.0)
    diagnostic = None if extends or not holds else "tangent holds at c but r < 1/e"

    return Certificate(
        verdict=Verdict.CERTIFIED if holds and extends else Verdict.INCONCLUSIVE,
        condition_id="lt_h_exp_tangent",
        parameters=params,
        method="single_point",
        evidence=_pairs(xs, ys),
        min_gap=min_gap,
        argmin=argmin,
        diagnostic=diagnostic,
    )
