# emit.py - 図のデータファイルを書き出す

"""
src/graphontail/phasecurves/emit.py

登録済みのギャップ関数・曲線を格子上で評価し、pgfplots の ``table`` が
そのまま読める 2 列の ASCII ファイルに書き出します。

形式: 1 行 1 点、``"x y"``（半角スペース 1 個）、各値は往復可能な最短の
10 進表記（``repr(float)``）、x の昇順、ヘッダーなし。q をパラメータとする
ut_boundary だけは曲線をたどる順（q の昇順）で出力する。
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from graphontail.breaking.witness import (
    bip_admissible_interval,
    bip_admissible_interval_sparse,
    bip_gap,
    bip_gap_sparse,
)
from graphontail.core.errors import ParameterError
from graphontail.core.pubsub_base import publish_event
from graphontail.phasecurves.curves import (
    Curve,
    CurveKind,
    lower_q_curve,
    upper_q_curve,
    ut_boundary_k3,
)
from graphontail.phasecurves.registry import CurveRegistry, curve_function
from graphontail.store.store import settings
from graphontail.symcheck.gaps import HExpGap, LtHK3Gap, LtK3Gap, UtK3Gap
from graphontail.topic.topics import CurveTopic

logger = logging.getLogger("graphontail.phasecurves")

# 曲線の既定の定義域（p または q）
CURVE_DOMAIN = (1e-3, 0.999)
# mixed 格子で対数間隔から等間隔に切り替える点
MIXED_SPLIT = 0.05


class GridSpec(BaseModel):
    """
    サンプリング格子の指定。

    Attributes:
        lo, hi: 区間。None なら関数の既定の定義域を使う。
        points: 点数（mixed では合計）。
        spacing: ``linear`` / ``log`` / ``mixed``（原点付近は対数間隔、その先は等間隔）。
    """

    model_config = ConfigDict(frozen=True)

    lo: float | None = None
    hi: float | None = None
    points: int = Field(default=500, ge=2)
    spacing: Literal["linear", "log", "mixed"] | None = None

    def resolve(self, domain: tuple[float, float], default_spacing: str = "linear") -> np.ndarray:
        lo = domain[0] if self.lo is None else self.lo
        hi = domain[1] if self.hi is None else self.hi
        if not hi > lo:
            raise ParameterError(f"empty grid interval [{lo!r}, {hi!r}]")

        spacing = self.spacing or default_spacing
        if spacing == "linear":
            return np.linspace(lo, hi, self.points)

        start = lo if lo > 0.0 else hi * 1e-4
        if spacing == "log" or hi <= MIXED_SPLIT or start >= MIXED_SPLIT:
            return np.geomspace(start, hi, self.points)

        n_log = (2 * self.points) // 5
        head = np.geomspace(start, MIXED_SPLIT, n_log, endpoint=False)
        tail = np.linspace(MIXED_SPLIT, hi, self.points - n_log)
        return np.concatenate([head, tail])


def format_rows(rows: list[tuple[float, float]]) -> str:
    """(x, y) 行を ``"x y\\n"`` の連結に整形する。"""
    return "".join(f"{float(x)!r} {float(y)!r}\n" for x, y in rows)


def evaluate_curve(
    identifier: str, grid: GridSpec | None = None, **params: float
) -> list[tuple[float, float]]:
    """登録済みの関数を格子上で評価し、出力順に並べた (x, y) 行を返す。

    定義域外の格子点と、値が有限でない点は捨てる。

    Raises:
        UnknownIdentifierError: 未登録の識別子。
        ParameterError: パラメータの過不足、または範囲外。
    """
    meta = CurveRegistry.get(identifier)
    missing = set(meta.params) - set(params)
    extra = set(params) - set(meta.params)
    if missing or extra:
        raise ParameterError(
            f"'{meta.id}' takes parameters {meta.params}; missing={sorted(missing)}, unexpected={sorted(extra)}"
        )

    domain = meta.domain(**params)
    grid = grid or GridSpec(points=settings().curve_points)
    xs = grid.resolve(domain, meta.default_spacing)
    xs = xs[(xs >= domain[0]) & (xs <= domain[1])]

    rows = [(x, y) for x, y in meta.evaluate(xs, **params) if np.isfinite(x) and np.isfinite(y)]
    if not meta.parametric:
        rows.sort(key=lambda row: row[0])
    return rows


def emit_curve(
    identifier: str, grid: GridSpec | None, path: str | Path, **params: float
) -> Path:
    """登録済みの関数・曲線を評価して 2 列のデータファイルに書き出す。

    Args:
        identifier: 例 ``lt_k3_gap``, ``bip_gap_sparse``, ``upper_q_curve``。
        grid: サンプリング格子。None なら既定。
        path: 出力先。
        **params: 関数のパラメータ（p, q, r）。

    Returns:
        書き出したファイルのパス。

    Raises:
        UnknownIdentifierError: 未登録の識別子。
        ParameterError: パラメータ不正。
        OSError: 書き込めないパス。
    """
    rows = evaluate_curve(identifier, grid, **params)
    path = Path(path)
    path.write_text(format_rows(rows), encoding="ascii")

    logger.info(f"wrote {len(rows)} rows of {identifier} to {path}")
    publish_event(CurveTopic.FILE_WRITTEN, identifier=identifier, path=str(path), rows=len(rows))
    return path


def sample_curve(kind: CurveKind | str, grid: GridSpec | None = None) -> Curve:
    """相図の曲線を標本化して ``Curve`` にまとめる。"""
    kind = CurveKind(kind)
    identifier = {
        CurveKind.UPPER_Q: "upper_q_curve",
        CurveKind.LOWER_Q: "lower_q_curve",
        CurveKind.UT_BOUNDARY: "ut_boundary",
        CurveKind.DIAGONAL: "diagonal",
    }[kind]
    cfg = settings()
    tolerance = {
        CurveKind.UPPER_Q: cfg.upper_curve_tol,
        CurveKind.LOWER_Q: cfg.lower_curve_tol,
    }.get(kind, 0.0)
    return Curve(kind=kind, samples=evaluate_curve(identifier, grid), tolerance=tolerance)


class FigureFile(BaseModel):
    """図 1 枚分のデータファイルの定義。

    Attributes:
        name: 出力ファイル名（pgfplots の ``table`` が読む名前）。
        identifier: 登録済み関数の識別子。
        params: 関数のパラメータ。
        curve: True なら相図の曲線（点数は ``points`` 引数に従う）。
    """

    model_config = ConfigDict(frozen=True)

    name: str
    identifier: str
    params: dict[str, float] = Field(default_factory=dict)
    curve: bool = False


FIGURE_FILES: tuple[FigureFile, ...] = (
    # 相図
    FigureFile(name="plot-uppertailcurve.dat", identifier="ut_boundary", curve=True),
    FigureFile(name="plot-lowersymcurve.dat", identifier="upper_q_curve", curve=True),
    FigureFile(name="plot-lowerbrkcurve.dat", identifier="lower_q_curve", curve=True),
    # p = 0.1 の接線ギャップ
    *(
        FigureFile(name=f"plot-K3sym{tag}.dat", identifier="lt_k3_gap", params={"p": 0.1, "q": q})
        for tag, q in (("045", 0.045), ("047", 0.047), ("05", 0.05), ("06", 0.06))
    ),
    # p = 0.1 の BIP ギャップ
    *(
        FigureFile(name=f"plot-K3brk{tag}.dat", identifier="bip_gap", params={"p": 0.1, "q": q})
        for tag, q in (("021", 0.021), ("0215", 0.0215), ("022", 0.022))
    ),
    # 疎極限の BIP ギャップ
    *(
        FigureFile(name=f"plot-K3hbrk{tag}.dat", identifier="bip_gap_sparse", params={"r": r})
        for tag, r in (("2", 0.2), ("209", 0.209), ("21", 0.21))
    ),
    # log x を変数とした h の接線ギャップ
    *(
        FigureFile(name=f"plot-Hsym{tag}.dat", identifier="h_exp_gap", params={"r": r})
        for tag, r in (("5", 0.5), ("6", 0.6), ("7", 0.7))
    ),
)

# ギャップ関数のファイルの点数
FIGURE_GAP_POINTS = 10_000


def emit_figure_data(
    out_dir: str | Path,
    points: int | None = None,
    names: set[str] | None = None,
) -> list[Path]:
    """図のデータファイルをまとめて ``out_dir`` に書き出す。

    Args:
        out_dir: 出力ディレクトリ（なければ作る）。
        points: 相図の曲線の点数。None なら ``curve_points`` の設定値。
        names: 書き出すファイル名の集合。None なら ``FIGURE_FILES`` の全部。

    Returns:
        書き出したファイルのパス（``FIGURE_FILES`` の順）。

    Raises:
        ParameterError: ``names`` に未知のファイル名がある。
    """
    if names is not None:
        unknown = set(names) - {figure.name for figure in FIGURE_FILES}
        if unknown:
            raise ParameterError(f"unknown figure files: {sorted(unknown)}")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    curve_grid = GridSpec(points=points or settings().curve_points)
    gap_grid = GridSpec(points=FIGURE_GAP_POINTS)

    written = []
    for figure in FIGURE_FILES:
        if names is not None and figure.name not in names:
            continue
        grid = curve_grid if figure.curve else gap_grid
        written.append(emit_curve(figure.identifier, grid, out_dir / figure.name, **figure.params))
    return written


# --- 登録済みの関数 -------------------------------------------------------


@curve_function("lt_k3_gap", params=("p", "q"), domain=lambda p, q: (0.0, p))
def _lt_k3_gap(xs, p, q):
    """有限 p の三角形下側裾の接線ギャップ"""
    return LtK3Gap(p=p, q=q)(xs)


@curve_function("ut_k3_gap", params=("p", "q"))
def _ut_k3_gap(xs, p, q):
    """三角形上側裾の凸包絡ギャップ"""
    return UtK3Gap(p=p, q=q)(xs)


@curve_function("lt_h_k3_gap", params=("r",))
def _lt_h_k3_gap(xs, r):
    """疎極限の三角形下側裾の接線ギャップ"""
    return LtHK3Gap(r=r)(xs)


@curve_function("h_exp_gap", params=("r",), domain=lambda r: (1e-3, 1.0))
def _h_exp_gap(xs, r):
    """log x を変数とした h の接線ギャップ"""
    return HExpGap(r=r)(xs)


@curve_function("bip_gap", params=("p", "q"), domain=bip_admissible_interval)
def _bip_gap(xs, p, q):
    """有限 p の BIP ギャップ"""
    return bip_gap(p, q, xs)


@curve_function("bip_gap_sparse", params=("r",), domain=bip_admissible_interval_sparse)
def _bip_gap_sparse(xs, r):
    """疎極限の BIP ギャップ"""
    return bip_gap_sparse(r, xs)


@curve_function(
    "upper_q_curve", domain=lambda: CURVE_DOMAIN, default_spacing="mixed", vectorized=False
)
def _upper_q_curve(p):
    """証明書の境界 q̄(p)"""
    return upper_q_curve(p)


@curve_function(
    "lower_q_curve", domain=lambda: CURVE_DOMAIN, default_spacing="mixed", vectorized=False
)
def _lower_q_curve(p):
    """BIP 破れの上限 q̲(p)"""
    return lower_q_curve(p)


@curve_function("ut_boundary", domain=lambda: CURVE_DOMAIN, parametric=True, vectorized=False)
def _ut_boundary(q):
    """上側裾の境界 (p(q), q)。p は q について単調でないので q の昇順で出力する"""
    return ut_boundary_k3(q), q


@curve_function("diagonal", domain=lambda: CURVE_DOMAIN)
def _diagonal(xs):
    """対角線 q = p"""
    return xs
