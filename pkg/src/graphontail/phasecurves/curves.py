# curves.py - 相境界曲線 q̄(p), q̲(p) と上側裾の境界

"""
src/graphontail/phasecurves/curves.py

q̄(p) は lt_k3_certificate の境界、q̲(p) は BIP 族で破れが見つかる上限として
固定する。どちらも 0 < q̲ ≤ q̄ ≤ p を満たし、原点での傾きはそれぞれ r̲, r̄ になる。
"""

from __future__ import annotations

import logging
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, model_validator
from scipy.special import expit

from graphontail.breaking.search import find_breaking
from graphontail.core.errors import ParameterError, SolverError
from graphontail.core.numeric import bisect_predicate, find_root
from graphontail.entropy.functions import relative_entropy
from graphontail.store.store import settings
from graphontail.symcheck.certificates import lt_k3_certificate

logger = logging.getLogger("graphontail.phasecurves")


class CurveKind(StrEnum):
    UPPER_Q = "upper_q"
    LOWER_Q = "lower_q"
    UT_BOUNDARY = "ut_boundary"
    DIAGONAL = "diagonal"


class Curve(BaseModel):
    """
    (p, q) の標本列として表した曲線。

    下側裾の曲線（upper_q, lower_q, diagonal）は p について単調で 0 < q <= p。
    ut_boundary は q をパラメータとした曲線なので q の順に並ぶ。
    """

    model_config = ConfigDict(frozen=True)

    kind: CurveKind
    samples: list[tuple[float, float]]
    tolerance: float

    @model_validator(mode="after")
    def _check(self) -> "Curve":
        if self.kind is CurveKind.UT_BOUNDARY:
            return self
        ps = [p for p, _ in self.samples]
        if any(b < a for a, b in zip(ps, ps[1:])):
            raise ValueError("samples must be ordered by p")
        if any(not (0.0 < q <= p) for p, q in self.samples):
            raise ValueError("lower-tail curves need 0 < q <= p")
        return self


def _check_p(p: float) -> None:
    if not (0.0 < p < 1.0):
        raise ParameterError(f"need 0 < p < 1, got p={p!r}")


def _implicit_upper(p: float, q: float) -> float:
    """I_p(q) + ½ q I_p'(q)。"""
    return relative_entropy(p, q) + 0.5 * q * relative_entropy(p, q, 1)


def upper_q_curve(p: float) -> float:
    """q̄(p): [q, p] 全体で lt_k3_certificate が certified になる最小の q。

    p <= ½ では 2q <= p の範囲で証明書が I_p(q) + ½ q I_p'(q) <= 0 と同値なので、
    この陰方程式を二分法で解く。p > ½ では証明書そのものを述語にして二分する。
    """
    _check_p(p)
    cfg = settings()

    if p <= 0.5:
        try:
            q = find_root(lambda q: _implicit_upper(p, q), p * 1e-9, 0.75 * p, xtol=cfg.upper_curve_tol)
            if 2.0 * q <= p:
                return q
        except SolverError:
            pass
        logger.warning(f"implicit equation did not bracket q̄ at p={p!r}; using the certificate")

    _, hi = bisect_predicate(
        lambda q: not lt_k3_certificate(p, q).certified, p * 1e-6, p, tol=cfg.lower_curve_tol
    )
    return hi


def lower_q_curve(p: float) -> float:
    """q̲(p): find_breaking(p, q) が証拠を返す q の上限（二分法、幅 1e-8）。"""
    _check_p(p)
    lo, _ = bisect_predicate(
        lambda q: find_breaking(p, q) is not None, p * 1e-6, p, tol=settings().lower_curve_tol
    )
    return lo


def ut_boundary_k3(q: float) -> float:
    """三角形上側裾の境界 (1 + (1/q - 1)^{1/(1-2q)}) p = 1 を p について解く。

    (1/q - 1) = 1 + (1-2q)/q なので log1p で指数を評価し、q = ½ では
    極限 1/(1 + e²) を返す。

    p(q) は q について単調でない（q → 0, 1 でともに 0 に近づく）ので、
    ``emit_curve("ut_boundary", ...)`` は x = p の昇順ではなく q の昇順で行を書く。
    """
    if not (0.0 < q < 1.0):
        raise ParameterError(f"need 0 < q < 1, got q={q!r}")
    if q == 0.5:
        log_term = 2.0
    else:
        log_term = math.log1p((1.0 - 2.0 * q) / q) / (1.0 - 2.0 * q)
    return float(expit(-log_term))
