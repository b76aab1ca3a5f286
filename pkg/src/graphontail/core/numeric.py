# numeric.py - 1 次元の求根・最小化の共通ルーチン

"""
src/graphontail/core/numeric.py

ブラケット付き二分法と、格子走査 + 局所精密化による 1 次元最小化。
証明書・破れ探索・相境界の計算はすべてここを通る。
"""

from __future__ import annotations

import logging
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from graphontail.core.errors import SolverError

logger = logging.getLogger("graphontail.numeric")


class ScanResult(NamedTuple):
    """格子走査の結果。"""

    xs: np.ndarray
    values: np.ndarray
    x_min: float
    min_value: float


def find_root(f: Callable[[float], float], lo: float, hi: float, xtol: float) -> float:
    """符号変化を持つブラケット [lo, hi] で f の根を二分法で求める。

    Raises:
        SolverError: 端点で符号が変わらない場合。
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise SolverError(f"no sign change on [{lo!r}, {hi!r}] (f={flo!r}, {fhi!r})")
    return float(bisect(f, lo, hi, xtol=xtol, maxiter=400))


def bisect_predicate(
    predicate: Callable[[float], bool], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """predicate(lo) が真、predicate(hi) が偽のブラケットを幅 tol まで縮める。

    Returns:
        (lo, hi)。lo 側は常に predicate が真。

    Raises:
        SolverError: 端点が前提を満たさない場合。
    """
    if not predicate(lo):
        raise SolverError(f"predicate is false at the lower end {lo!r}")
    if predicate(hi):
        raise SolverError(f"predicate is true at the upper end {hi!r}")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def scan_minimum(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    points: int,
    refine: bool = True,
    head_points: int = 0,
) -> ScanResult:
    """[lo, hi] 上の格子で f を評価し、最小点の近傍を有界スカラー最小化で詰める。

    Args:
        f: ベクトル化された関数。
        lo, hi: 区間の端点。
        points: 等間隔格子の点数。
        refine: 最小格子点の両隣で ``minimize_scalar(method="bounded")`` を行うか。
        head_points: lo 直後の最初の格子幅に追加する対数間隔の点数（端点特異性の対策）。

    Returns:
        ScanResult。
    """
    xs = np.linspace(lo, hi, max(points, 2))
    if head_points > 0 and hi > lo:
        step = xs[1] - xs[0]
        head = lo + np.geomspace(step * 1e-8, step, head_points, endpoint=False)
        xs = np.unique(np.concatenate([xs, head]))

    values = np.asarray(f(xs), dtype=float)
    i = int(np.nanargmin(values))
    x_min, min_value = float(xs[i]), float(values[i])

    if refine and xs.size > 2:
        a, b = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, xs.size - 1)])
        if b > a:
            res = minimize_scalar(
                lambda x: float(f(np.asarray(x))),
                bounds=(a, b),
                method="bounded",
                options={"xatol": 1e-14 * max(1.0, abs(b))},
            )
            if res.fun < min_value:
                x_min, min_value = float(res.x), float(res.fun)

    return ScanResult(xs, values, x_min, min_value)
