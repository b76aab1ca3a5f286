# search.py - 対称性の破れの探索

"""
src/graphontail/breaking/search.py

BIP 族の中から定数グラフォンに勝つ証拠を探します。

探索順は「自明な証拠 BIP_{0,p}（疎極限では BIP_{0,1}）」→「許容区間上の
ギャップ最小化」→（疎極限のみ）「臨界三つ組からのスケーリング」で、
最初に見つかった証拠を返す。見つからなければ None（エラーではない）。
"""

from __future__ import annotations

import logging
import math
import threading

from pydantic import BaseModel, ConfigDict

from graphontail.breaking.witness import (
    BreakingWitness,
    _check_pq,
    _check_r,
    _gap_values,
    _sparse_gap_values,
    bip_admissible_interval,
    bip_admissible_interval_sparse,
    bip_k3_density,
    bip_partner,
    make_witness,
)
from graphontail.core.errors import DomainError, ParameterError
from graphontail.core.numeric import ScanResult, bisect_predicate, scan_minimum
from graphontail.core.pubsub_base import publish_event
from graphontail.entropy.functions import EntropyFn, relative_entropy, sparse_entropy
from graphontail.store.store import settings
from graphontail.topic.topics import SearchTopic

logger = logging.getLogger("graphontail.breaking")

# 臨界 r を探すブラケット
CRITICAL_BRACKET = (0.15, 0.3)


class CriticalTriple(BaseModel):
    """疎極限の BIP ギャップがちょうど 0 まで下がる (a₁, b₁, r₁)。

    r₁ は二分法の破れ側の端なので ½h(a₁) + ½h(b₁) <= h(r₁) が成り立つ。
    """

    model_config = ConfigDict(frozen=True)

    a1: float
    b1: float
    r1: float
    min_gap: float


def _found(witness: BreakingWitness) -> BreakingWitness:
    logger.debug(f"witness {witness.kind}: a={witness.a!r}, b={witness.b!r}, margin={witness.margin!r}")
    publish_event(SearchTopic.WITNESS_FOUND, kind=witness.kind, margin=witness.margin)
    return witness


def minimize_bip_gap(p: float, q: float) -> ScanResult | None:
    """有限 p の BIP ギャップを許容区間上で最小化する。区間が 1 点なら None。"""
    lo, hi = bip_admissible_interval(p, q)
    if hi <= lo:
        return None
    return scan_minimum(lambda x: _gap_values(p, q, x), lo, hi, settings().search_points)


def minimize_bip_gap_sparse(r: float) -> ScanResult | None:
    """疎極限の BIP ギャップを許容区間上で最小化する。"""
    lo, hi = bip_admissible_interval_sparse(r)
    if hi <= lo:
        return None
    return scan_minimum(lambda x: _sparse_gap_values(r, x), lo, hi, settings().search_points)


def find_breaking(p: float, q: float) -> BreakingWitness | None:
    """LT_p(K_3, q) で定数グラフォン W ≡ q に勝つ BIP_{a,b} を探す。

    まず ½I_p(0) < I_p(q) なら BIP_{0,p}（三角形密度 0）を返す。
    そうでなければギャップ関数を許容区間上で最小化し、-1e-10 を下回れば
    その点の BIP_{a,b}（a < q < b <= p）を返す。

    Args:
        p: 0 < q <= p < 1。
        q: 閾値パラメータ。

    Returns:
        証拠、または None。
    """
    _check_pq(p, q)
    tol = settings().breaking_tol
    entropy = EntropyFn.finite_p(p)
    params = {"p": p, "q": q}

    trivial_margin = relative_entropy(p, q) - 0.5 * relative_entropy(p, 0.0)
    if trivial_margin > tol:
        return _found(make_witness(0.0, p, entropy, q, "trivial", params, trivial_margin))

    scan = minimize_bip_gap(p, q)
    if scan is not None and scan.min_value < -tol:
        a = scan.x_min
        b = bip_partner(a, q, p)
        return _found(make_witness(a, b, entropy, q, "bip_search", params, -scan.min_value))
    return None


def find_breaking_sparse(r: float) -> BreakingWitness | None:
    """疎極限 LT(K_3, r) で W ≡ r に勝つ BIP_{a,b} を探す。

    BIP_{0,1}（h(r) > ½、つまり r < 0.186…）→ ギャップ最小化 →
    臨界三つ組のスケーリング（r < r₁）の順に試す。

    Returns:
        証拠、または None。
    """
    _check_r(r)
    tol = settings().breaking_tol
    entropy = EntropyFn.sparse()
    params = {"r": r}

    trivial_margin = sparse_entropy(r) - 0.5
    if trivial_margin > tol:
        return _found(make_witness(0.0, 1.0, entropy, r, "trivial", params, trivial_margin))

    scan = minimize_bip_gap_sparse(r)
    if scan is not None and scan.min_value < -tol:
        a = scan.x_min
        b = bip_partner(a, r, 1.0)
        return _found(make_witness(a, b, entropy, r, "bip_search", params, -scan.min_value))

    triple = critical_triple()
    if r < triple.r1:
        try:
            witness = scale_witness(triple, r)
        except DomainError:
            return None
        if witness.margin > tol:
            return _found(witness)
    return None


def scale_witness(critical: CriticalTriple, r: float) -> BreakingWitness:
    """臨界三つ組を s = r/r₁ 倍して r での証拠を作る。

    (sa₁, sb₁) は次数 3 の斉次性で ¼a³ + ¾ab² = r³ を満たし、マージンは
    h(sx) = s h(x) + (s log s) x - s + 1 から
    s (h(r₁) - ½h(a₁) - ½h(b₁)) + s log s (r₁ - ½a₁ - ½b₁) > 0 となる。

    Raises:
        ParameterError: 三つ組が前提を満たさない、または r が (0, r₁] にない。
        DomainError: スケールした BIP のマージンが正にならない（r = r₁ かつ
            基準マージンが 0 のときなど）。
    """
    a1, b1, r1 = critical.a1, critical.b1, critical.r1
    if abs(bip_k3_density(a1, b1) - r1**3) > 1e-10:
        raise ParameterError("critical triple does not satisfy 1/4 a^3 + 3/4 a b^2 = r^3")
    base_margin = sparse_entropy(r1) - 0.5 * sparse_entropy(a1) - 0.5 * sparse_entropy(b1)
    if base_margin < 0.0:
        raise ParameterError("critical triple does not satisfy 1/2 h(a1) + 1/2 h(b1) <= h(r1)")
    if not (0.0 < r <= r1):
        raise ParameterError(f"scale_witness needs 0 < r <= r1={r1!r}, got r={r!r}")

    s = r / r1
    s_log_s = s * math.log(s)
    closed_form = s * base_margin + s_log_s * (r1 - 0.5 * a1 - 0.5 * b1)
    margin = sparse_entropy(r) - 0.5 * sparse_entropy(s * a1) - 0.5 * sparse_entropy(s * b1)
    if not (closed_form > 0.0 and margin > 0.0):
        raise DomainError(
            f"scaled BIP at r={r!r} does not beat the constant (margin={margin!r}, closed form={closed_form!r})"
        )
    return make_witness(s * a1, s * b1, EntropyFn.sparse(), r, "scaling", {"r": r}, closed_form)


# 臨界三つ組のキャッシュ（初回だけロック下で計算）
_critical: CriticalTriple | None = None
_critical_lock = threading.Lock()


def _compute_critical_triple() -> CriticalTriple:
    cfg = settings()

    def breaks(r: float) -> bool:
        scan = minimize_bip_gap_sparse(r)
        return scan is not None and scan.min_value < -cfg.critical_gap_tol

    lo, _ = bisect_predicate(breaks, *CRITICAL_BRACKET, tol=cfg.constant_tol)
    scan = minimize_bip_gap_sparse(lo)
    a1 = scan.x_min
    return CriticalTriple(a1=a1, b1=bip_partner(a1, lo, 1.0), r1=lo, min_gap=scan.min_value)


def critical_triple() -> CriticalTriple:
    """臨界三つ組 (a₁, b₁, r₁ ≈ 0.209) を返す。初回呼び出しで計算してキャッシュする。"""
    global _critical
    with _critical_lock:
        if _critical is None:
            _critical = _compute_critical_triple()
            logger.info(f"critical triple: r1={_critical.r1!r}, a1={_critical.a1!r}, b1={_critical.b1!r}")
            publish_event(
                SearchTopic.CRITICAL_TRIPLE_READY,
                a1=_critical.a1,
                b1=_critical.b1,
                r1=_critical.r1,
            )
        return _critical
