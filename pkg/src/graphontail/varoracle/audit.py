# audit.py - 疎問題の解が満たすべき必要条件の検査

"""
src/graphontail/varoracle/audit.py

LT(H,r) の最小化元が満たす 3 つの性質を、与えられた解について確かめます。

- 下界: W >= r^{m r^{-m}}（ほとんど至るところ）
- 対数平均: E[log W] <= log r
- 恒等式: E[t'(H,W) W] = m t(H,W)

失敗は例外ではなく報告の項目として返す。
"""

from __future__ import annotations

import json
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from graphontail.core.errors import ParameterError
from graphontail.entropy.functions import EntropyFn, EntropyKind
from graphontail.graphs.graph import Graph
from graphontail.stepkernel.density import density, expect, functional_derivative
from graphontail.stepkernel.kernel import StepKernel
from graphontail.varoracle.solver import OracleSolution

AUDIT_TOL = 1e-9
IDENTITY_TOL = 1e-10


class AuditCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    value: float
    bound: float


class AuditReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    target: float
    checks: list[AuditCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> AuditCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_json(self, indent: int | None = None) -> str:
        data = self.model_dump(mode="json")
        data["passed"] = self.passed
        return json.dumps(data, indent=indent)


def minimizer_lower_bound(m: int, r: float) -> float:
    """r^{m r^{-m}}。指数が大きすぎる場合は 0 に落とす。"""
    log_r = math.log(r)
    with np.errstate(over="ignore", invalid="ignore"):
        exponent = m * np.power(r, -float(m)) * log_r
    if not np.isfinite(exponent):
        return 0.0
    return float(np.exp(exponent))


def audit_solution(
    sol: OracleSolution | StepKernel,
    H: Graph,
    mode: EntropyFn,
    target: float,
) -> AuditReport:
    """
    疎問題の解（または任意のステップグラフォン）を 3 つの必要条件で監査する。

    Args:
        sol: オラクルの解、またはステップグラフォン。
        H: 部分グラフ。
        mode: ``EntropyFn.sparse()`` のみ。
        target: r。

    Raises:
        ParameterError: finite_p モード、または r が (0, 1] の外。
    """
    if mode.kind is not EntropyKind.SPARSE:
        raise ParameterError("the audit applies to the sparse problem only")
    if not 0.0 < target <= 1.0:
        raise ParameterError(f"r must lie in (0, 1], got {target!r}")

    W = sol.graphon if isinstance(sol, OracleSolution) else sol
    m = H.edge_count

    lower = minimizer_lower_bound(m, target)
    min_value = float(np.min(W.values))

    log_mean = expect(W, np.log, allow_infinite=True)
    log_r = math.log(target)

    t = density(H, W)
    D = functional_derivative(H, W)
    weighted = float(W.measures @ (D.values * W.values) @ W.measures)

    return AuditReport(
        target=target,
        checks=[
            AuditCheck(
                name="lower_bound",
                passed=min_value >= lower - AUDIT_TOL,
                value=min_value,
                bound=lower,
            ),
            AuditCheck(
                name="log_mean",
                passed=log_mean <= log_r + AUDIT_TOL,
                value=log_mean,
                bound=log_r,
            ),
            AuditCheck(
                name="derivative_identity",
                passed=abs(weighted - m * t) <= IDENTITY_TOL,
                value=weighted,
                bound=m * t,
            ),
        ],
    )
