# constants.py - 疎極限の定数と r_m の表

"""
src/graphontail/phasecurves/constants.py

r̄ ≈ 0.466、r̲ ≈ 0.209、r_trivial ≈ 0.186 と、一般の m = e(H) に対する
しきい値 r_m。根はすべてブラケット付き二分法で求める。
"""

from __future__ import annotations

import logging
import math

from pydantic import BaseModel, ConfigDict, model_validator

from graphontail.breaking.search import critical_triple
from graphontail.core.errors import ParameterError
from graphontail.core.numeric import find_root
from graphontail.entropy.functions import sparse_entropy
from graphontail.store.store import settings

logger = logging.getLogger("graphontail.phasecurves")

# Table 1 に並ぶ m
TABLE_MS: tuple[int, ...] = (3, 4, 5, 6, 7, 8, 9, 10, 20, 100)


class SparseConstants(BaseModel):
    """
    疎極限の三角形下側裾の定数と r_m の表。

    Attributes:
        r_upper: (3/2) r log r - r + 1 = 0 の根 r̄。
        r_lower: 臨界三つ組の r₁（r̲）。
        r_trivial: h(r) = ½ の根。
        r_m: m -> r_m。
    """

    model_config = ConfigDict(frozen=True)

    r_upper: float
    r_lower: float
    r_trivial: float
    r_m: dict[int, float]

    @model_validator(mode="after")
    def _check_order(self) -> "SparseConstants":
        if not (self.r_trivial < self.r_lower < self.r_upper < 1.0):
            raise ValueError("expected r_trivial < r_lower < r_upper < 1")
        ms = sorted(self.r_m)
        values = [self.r_m[m] for m in ms]
        if any(b <= a for a, b in zip(values, values[1:])) or any(v >= 1.0 for v in values):
            raise ValueError("r_m must be strictly increasing in m and below 1")
        return self


def r_bar() -> float:
    """r̄: (3/2) r log r - r + 1 = 0（h(r) + ½ r h'(r) = 0 と同値）の根。"""
    return find_root(
        lambda r: 1.5 * r * math.log(r) - r + 1.0, 0.3, 0.6, xtol=settings().constant_tol
    )


def r_trivial() -> float:
    """h(r) = ½ の根。これより小さい r では BIP_{0,1} が定数に勝つ。"""
    return find_root(lambda r: sparse_entropy(r) - 0.5, 0.05, 0.4, xtol=settings().constant_tol)


def _h_exp_condition(m: int, r: float) -> float:
    """F(r) = h(c) - h(r) - r log r (log c - log r), c = r^{m r^{-m}}。"""
    log_r = math.log(r)
    exponent = -m * log_r
    if exponent > 700.0:
        return -math.inf
    log_c = m * math.exp(exponent) * log_r
    c = math.exp(log_c) if log_c > -745.0 else 0.0
    return sparse_entropy(c) - sparse_entropy(r) - r * log_r * (log_c - log_r)


def r_m(m: int) -> float:
    """一般の H（m = e(H)）で W ≡ r が最小化元と確かめられる下限 r_m。

    F(r) = 0 の (1/e, 1) の根を二分法で求める。

    Raises:
        ParameterError: m < 1。
    """
    if m < 1:
        raise ParameterError(f"r_m needs m >= 1, got {m}")

    lo = math.exp(-1.0)
    for hi in (0.999, 0.9999, 0.99999, 0.999999):
        if _h_exp_condition(m, hi) > 0.0:
            break
    return find_root(lambda r: _h_exp_condition(m, r), lo, hi, xtol=settings().constant_tol)


def ut_sparse_rate(delta: float) -> float:
    """疎な上側裾の比較用の参照式 min(δ^{2/3}, (2/3)δ)。"""
    if not delta > 0.0:
        raise ParameterError(f"delta must be positive, got {delta!r}")
    return min(delta ** (2.0 / 3.0), 2.0 * delta / 3.0)


def sparse_constants(ms: tuple[int, ...] = TABLE_MS) -> SparseConstants:
    """r̄、r̲、r_trivial と r_m の表をまとめて計算する。"""
    constants = SparseConstants(
        r_upper=r_bar(),
        r_lower=critical_triple().r1,
        r_trivial=r_trivial(),
        r_m={m: r_m(m) for m in ms},
    )
    logger.debug(f"sparse constants: {constants}")
    return constants
