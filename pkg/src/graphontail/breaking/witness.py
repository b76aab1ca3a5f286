# witness.py - BIP 族のギャップ関数と破れの証拠

"""
src/graphontail/breaking/witness.py

2 ブロックグラフォン BIP_{a,b} による対称性の破れの証拠 ``BreakingWitness`` と、
三角形密度の制約を等号で満たす b(a) = √((4q³-a³)/(3a)) に沿ったギャップ関数。
"""

from __future__ import annotations

import json
import logging
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, model_validator

from graphontail.core.errors import AdmissibleDomainError, ParameterError
from graphontail.core.numeric import find_root
from graphontail.entropy.functions import EntropyFn, relative_entropy, sparse_entropy
from graphontail.graphs.graph import graph_library
from graphontail.stepkernel.density import density, expect
from graphontail.stepkernel.kernel import StepGraphon, bip
from graphontail.store.store import settings

logger = logging.getLogger("graphontail.breaking")

# 制約値の許容誤差
CONSTRAINT_TOL = 1e-12


class BreakingWitness(BaseModel):
    """
    定数グラフォンより真に小さいコストを持つ BIP_{a,b}。

    ``witness_value`` と ``constraint_value`` は探索で使った閉形式ではなく、
    ``expect`` と ``density`` で改めて評価した値。

    Attributes:
        graphon: BIP_{a,b}。
        kind: ``trivial`` / ``bip_search`` / ``scaling``。
        mode: ``finite_p`` または ``sparse``。
        parameters: (p, q) または r。
        a, b: 対角・非対角の値。
        constant_value: I_p(q) または h(r)。
        witness_value: E[I_p(W)] または E[h(W)]。
        margin: constant_value - witness_value（正）。
        constraint_value: t(K_3, W)。
        target: q^3 または r^3。
        closed_form_margin: 探索側の閉形式で求めたマージン。
    """

    model_config = ConfigDict(frozen=True)

    graphon: StepGraphon
    kind: str
    mode: str
    parameters: dict[str, float]
    a: float
    b: float
    constant_value: float
    witness_value: float
    margin: float
    constraint_value: float
    target: float
    closed_form_margin: float | None = None

    @model_validator(mode="after")
    def _check(self) -> "BreakingWitness":
        if not self.margin > 0.0:
            raise ValueError(f"witness margin must be positive, got {self.margin!r}")
        if self.constraint_value > self.target + CONSTRAINT_TOL:
            raise ValueError(
                f"witness violates the density constraint: {self.constraint_value!r} > {self.target!r}"
            )
        return self

    def to_dict(self) -> dict[str, Any]:
        data = self.graphon.to_dict()
        data.update(self.model_dump(mode="json", exclude={"graphon"}))
        return data

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def bip_k3_density(a: float, b: float) -> float:
    """t(K_3, BIP_{a,b}) の閉形式 ¼a³ + ¾ab²。"""
    return 0.25 * a**3 + 0.75 * a * b**2


def bip_partner(x: ArrayLike, q: float, upper: float = np.inf):
    """¼x³ + ¾x b² = q³ を満たす b(x)。丸めで ``upper`` をわずかに超える分は切り詰める。"""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        b = np.sqrt(np.maximum(4.0 * q**3 - x**3, 0.0) / (3.0 * x))
    b = np.minimum(b, upper)
    return float(b) if b.ndim == 0 else b


def admissible_interval(upper: float, q: float) -> tuple[float, float]:
    """b(x) <= upper となる x の区間 [x_min, q]。

    x_min は x³ + 3 upper² x - 4q³ = 0 の (0, q] の根。
    """
    tol = settings().endpoint_tol

    def phi(x: float) -> float:
        return x**3 + 3.0 * upper**2 * x - 4.0 * q**3

    if phi(q) <= 0.0:
        # q = upper のとき区間は 1 点
        return q, q
    x_min = find_root(phi, 0.0, q, xtol=tol * q)
    # b(x_min) <= upper の側に寄せる
    step = tol * q
    while phi(x_min) < 0.0 and x_min < q:
        x_min = min(x_min + step, q)
        step *= 2.0
    return x_min, q


def bip_admissible_interval(p: float, q: float) -> tuple[float, float]:
    """有限 p の BIP ギャップの許容区間。"""
    return admissible_interval(p, q)


def bip_admissible_interval_sparse(r: float) -> tuple[float, float]:
    """疎極限の BIP ギャップの許容区間（b <= 1）。"""
    return admissible_interval(1.0, r)


def _check_pq(p: float, q: float) -> None:
    if not (0.0 < q <= p < 1.0):
        raise ParameterError(f"need 0 < q <= p < 1, got p={p!r}, q={q!r}")


def _check_r(r: float) -> None:
    if not (0.0 < r < 1.0):
        raise ParameterError(f"need 0 < r < 1, got r={r!r}")


def _gap_values(p: float, q: float, x: np.ndarray) -> np.ndarray:
    b = bip_partner(x, q, p)
    return 0.5 * relative_entropy(p, x) + 0.5 * relative_entropy(p, b) - relative_entropy(p, q)


def _sparse_gap_values(r: float, x: np.ndarray) -> np.ndarray:
    b = bip_partner(x, r, 1.0)
    return 0.5 * sparse_entropy(x) + 0.5 * sparse_entropy(b) - sparse_entropy(r)


def _within(x: ArrayLike, lo: float, hi: float) -> None:
    arr = np.asarray(x, dtype=float)
    slack = 1e-15 * max(hi, 1e-300)
    if np.any((arr < lo - slack) | (arr > hi + slack) | (arr <= 0.0)):
        bad = float(arr) if arr.ndim == 0 else float(arr[(arr < lo) | (arr > hi) | (arr <= 0.0)][0])
        raise AdmissibleDomainError(bad, lo, hi)


def bip_gap(p: float, q: float, x: ArrayLike):
    """f(x) = ½I_p(x) + ½I_p(b(x)) - I_p(q)。負なら (p, q) で対称性が破れる。

    Raises:
        ParameterError: 0 < q <= p < 1 でない。
        AdmissibleDomainError: x が許容区間外（区間の端点を保持する）。
    """
    _check_pq(p, q)
    lo, hi = bip_admissible_interval(p, q)
    _within(x, lo, hi)
    arr = np.clip(np.asarray(x, dtype=float), lo, hi)
    value = _gap_values(p, q, arr)
    return float(value) if arr.ndim == 0 else value


def bip_gap_sparse(r: float, x: ArrayLike):
    """f(x) = ½h(x) + ½h(b(x)) - h(r)。負なら LT(K_3, r) < h(r)。

    Raises:
        ParameterError: 0 < r < 1 でない。
        AdmissibleDomainError: x が許容区間外。
    """
    _check_r(r)
    lo, hi = bip_admissible_interval_sparse(r)
    _within(x, lo, hi)
    arr = np.clip(np.asarray(x, dtype=float), lo, hi)
    value = _sparse_gap_values(r, arr)
    return float(value) if arr.ndim == 0 else value


def make_witness(
    a: float,
    b: float,
    entropy: EntropyFn,
    threshold: float,
    kind: str,
    parameters: dict[str, float],
    closed_form_margin: float | None = None,
) -> BreakingWitness:
    """BIP_{a,b} を密度・期待値で評価し直して ``BreakingWitness`` を作る。"""
    K3 = graph_library("complete", 3)
    W = bip(a, b)
    constant_value = float(entropy(threshold))
    witness_value = expect(W, entropy)
    return BreakingWitness(
        graphon=W,
        kind=kind,
        mode=str(entropy.kind),
        parameters=parameters,
        a=a,
        b=b,
        constant_value=constant_value,
        witness_value=witness_value,
        margin=constant_value - witness_value,
        constraint_value=density(K3, W),
        target=threshold**3,
        closed_form_margin=closed_form_margin,
    )
