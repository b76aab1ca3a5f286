# settings.py - 数値計算の既定値をまとめた設定モデル

"""
src/graphontail/store/settings.py

許容誤差・予算・格子サイズなど、各モジュールが既定値として参照する設定。
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class OracleOptions(BaseModel):
    """離散化ソルバー（solve_lt）のオプション。"""

    model_config = ConfigDict(validate_assignment=True)

    restarts: int = Field(default=20, ge=1)
    seed: int = 0
    threads: int = Field(default=1, ge=1)
    max_outer: int = Field(default=60, ge=1)
    max_inner: int = Field(default=2000, ge=1)
    feasibility_tol: float = Field(default=1e-9, gt=0)
    stationarity_tol: float = Field(default=1e-6, gt=0)
    floor: float = Field(default=1e-12, gt=0)
    initial_penalty: float = Field(default=10.0, gt=0)
    polish: bool = True
    refine_from_coarse: bool = True
    near_optimal_tol: float = Field(default=1e-6, ge=0)


class NumericsConfig(BaseModel):
    """ライブラリ全体の数値設定。``get_store(NumericsConfig)`` で共有される。"""

    model_config = ConfigDict(validate_assignment=True)

    # stepkernel
    density_budget: int = Field(default=10**8, ge=1)
    measure_tol: float = 1e-12

    # symcheck
    certificate_tol: float = 1e-12
    grid_step: float = Field(default=1e-4, gt=0)
    evidence_points: int = Field(default=1001, ge=2)

    # breaking
    breaking_tol: float = 1e-10
    critical_gap_tol: float = 1e-12
    search_points: int = Field(default=10_000, ge=10)
    endpoint_tol: float = 1e-12

    # phasecurves
    upper_curve_tol: float = 1e-10
    lower_curve_tol: float = 1e-8
    constant_tol: float = 1e-9
    curve_points: int = Field(default=500, ge=2)

    # empirics
    empirics_max_vertices: int = 5
    empirics_max_n: int = 200
    empirics_batch: int = Field(default=1000, ge=1)

    # 並列度
    threads: int = Field(default=1, ge=1)

    oracle: OracleOptions = Field(default_factory=OracleOptions)
