# solver.py - k ブロック下側裾問題の多重スタート求解器

"""
src/graphontail/varoracle/solver.py

LT_p(H,q) と LT(H,r) を k 等分ステップグラフォン上で数値的に解く独立オラクル。

各スタート点について
1. 正規化した制約 g = t/τ - 1 に対する拡張ラグランジュ法（内側は L-BFGS-B）
2. 任意で SLSQP による仕上げ
3. 斉次性 t(H, sW) = s^m t(H, W) による厳密な実行可能化
を行い、実行可能な候補のうち目的関数が最小のものを残す。
得られる値は上界であって、大域最適性の証明ではない。
"""

from __future__ import annotations

import json
import logging
from typing import Any, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import minimize

from graphontail.core.errors import DomainError, ParameterError
from graphontail.core.pubsub_base import publish_event
from graphontail.entropy.functions import EntropyFn, EntropyKind
from graphontail.graphs.graph import Graph
from graphontail.stepkernel.density import check_budget, density, functional_derivative
from graphontail.stepkernel.kernel import StepGraphon, StepKernel, refine_uniform
from graphontail.store.settings import OracleOptions
from graphontail.store.store import settings
from graphontail.topic.topics import SolverTopic
from graphontail.utils.parallel import parallel_map
from graphontail.varoracle.problem import LowerTailProblem

logger = logging.getLogger("graphontail.varoracle")

# 境界ブロックとみなす距離
BOUNDARY_TOL = 1e-9
# 目的関数の同値判定
TIE_TOL = 1e-12
MAX_PENALTY = 1e12

FINITE_P_RESIDUAL_NOTE = (
    "finite-p residual uses I_p' in place of h'; "
    "the Lagrange condition is only established for the sparse problem"
)


def parse_mode(text: str) -> EntropyFn:
    """``"sparse"`` または ``"p=0.5"`` をエントロピー関数に変換する。

    Raises:
        ParameterError: 書式が不正、または p が範囲外。
    """
    text = text.strip()
    if text == "sparse":
        return EntropyFn.sparse()
    if text.startswith("p="):
        try:
            p = float(text[2:])
        except ValueError:
            raise ParameterError(f"invalid mode {text!r}") from None
        try:
            return EntropyFn.finite_p(p)
        except ValueError as exc:
            raise ParameterError(f"invalid mode {text!r}: {exc}") from None
    raise ParameterError(f"mode must be 'sparse' or 'p=VALUE', got {text!r}")


def mode_label(mode: EntropyFn) -> str:
    return "sparse" if mode.kind is EntropyKind.SPARSE else f"p={mode.p!r}"


class OracleSolution(BaseModel):
    """
    オラクルが返す最良解。

    Attributes:
        graphon: k 等分ステップグラフォン。
        objective: E[I_p(W)] または E[h(W)]。
        multiplier: 内部ブロックから最小二乗で当てはめた λ >= 0。
        constraint_value: t(H, W)（``density`` で独立に再計算）。
        threshold: target^{e(H)}。
        feasibility_tol: 制約違反として許す上限（``OracleOptions.feasibility_tol``）。
        constraint_slack: threshold - constraint_value。
        stationarity_residual: 内部ブロック上の |entropy'(W) + λ t'(H,W)| の最大値。
            全ブロックが境界にあるときは None。
        boundary_blocks: 境界（床・上限）に張り付いた上三角ブロック数。
        constant_objective: 定数グラフォン W ≡ target の目的関数値。
        distinct_optima: 最良値から ``near_optimal_tol`` 以内の異なる解。
        residual_note: 残差の解釈に関する注記（finite_p のとき）。
    """

    model_config = ConfigDict(frozen=True)

    graphon: StepGraphon
    mode: str
    target: float
    k: int
    objective: float
    multiplier: float
    constraint_value: float
    threshold: float
    feasibility_tol: float = 1e-9
    constraint_slack: float
    stationarity_residual: float | None
    boundary_blocks: int
    restarts_used: int
    converged: bool
    constant_objective: float
    distinct_optima: list[StepGraphon] = []
    residual_note: str | None = None

    @model_validator(mode="after")
    def _check(self) -> "OracleSolution":
        if self.constraint_value > self.threshold + self.feasibility_tol:
            raise ValueError(
                f"solution violates the density constraint: {self.constraint_value!r} > {self.threshold!r}"
            )
        if self.objective > self.constant_objective + 1e-9:
            raise ValueError("solution is worse than the constant graphon")
        return self

    def to_dict(self) -> dict[str, Any]:
        data = self.graphon.to_dict()
        data.update(self.model_dump(mode="json", exclude={"graphon", "distinct_optima"}))
        data["distinct_optima"] = [W.to_dict() for W in self.distinct_optima]
        return data

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


class _RestartOutcome(NamedTuple):
    index: int
    x: np.ndarray
    objective: float
    converged: bool


# --- 内部ブロックと停留条件 ---------------------------------------------


def interior_mask(W: StepKernel, mode: EntropyFn, tol: float = BOUNDARY_TOL) -> np.ndarray:
    """値が (0, upper) の内部にあるブロックの真偽行列。"""
    values = W.values
    return (values > tol) & (values < mode.upper_bound - tol)


def _interior_terms(H: Graph, W: StepKernel, mode: EntropyFn) -> tuple[np.ndarray, np.ndarray]:
    mask = interior_mask(W, mode)
    rows, cols = np.triu_indices(W.k)
    keep = mask[rows, cols]
    if not np.any(keep):
        raise DomainError("all blocks lie on the boundary; the stationarity residual is undefined")
    D = functional_derivative(H, W).values
    grad = mode.derivative(1)(W.values[rows[keep], cols[keep]])
    return np.asarray(grad, dtype=float), D[rows[keep], cols[keep]]


def fit_multiplier(H: Graph, W: StepKernel, mode: EntropyFn) -> float:
    """内部ブロック上で entropy'(W) + λ t'(H,W) を最小にする λ >= 0。

    Raises:
        DomainError: 内部ブロックが 1 つもない。
    """
    grad, deriv = _interior_terms(H, W, mode)
    denom = float(deriv @ deriv)
    if denom == 0.0:
        return 0.0
    return max(0.0, -float(grad @ deriv) / denom)


def stationarity_residual(H: Graph, W: StepKernel, lam: float, mode: EntropyFn) -> float:
    """
    内部ブロック上の max |entropy'(W) + λ t'(H,W)|。

    境界ブロックは除外する。finite_p では h' の代わりに I_p' を用いる。

    Raises:
        DomainError: 全ブロックが境界にある。
    """
    grad, deriv = _interior_terms(H, W, mode)
    return float(np.max(np.abs(grad + lam * deriv)))


def count_boundary_blocks(W: StepKernel, mode: EntropyFn) -> int:
    mask = interior_mask(W, mode)
    rows, cols = np.triu_indices(W.k)
    return int(np.count_nonzero(~mask[rows, cols]))


# --- 1 スタート分の最適化 ----------------------------------------------------


def _al_value(x: np.ndarray, problem: LowerTailProblem, lam: float, mu: float):
    F, gF = problem.objective_grad(x)
    t, gt = problem.density_grad(x)
    g = t / problem.tau - 1.0
    shifted = lam + mu * g
    if shifted > 0.0:
        return F + (shifted**2 - lam**2) / (2.0 * mu), gF + shifted * gt / problem.tau
    return F - lam**2 / (2.0 * mu), gF


def augmented_lagrangian(
    problem: LowerTailProblem, x0: np.ndarray, opts: OracleOptions
) -> tuple[np.ndarray, float, bool]:
    """
    不等式制約 g(x) <= 0 に対する PHR 型拡張ラグランジュ法。

    違反が前回の 1/4 まで縮まなければペナルティを 10 倍にする。

    Returns:
        (x, λ, converged)
    """
    x = np.clip(x0, problem.floor, problem.upper)
    lam = 0.0
    mu = opts.initial_penalty
    previous = np.inf
    for _ in range(opts.max_outer):
        result = minimize(
            _al_value,
            x,
            args=(problem, lam, mu),
            jac=True,
            method="L-BFGS-B",
            bounds=problem.bounds,
            options={"maxiter": opts.max_inner, "ftol": 1e-15, "gtol": 1e-12},
        )
        step = float(np.max(np.abs(result.x - x)))
        x = result.x
        g = problem.density(x) / problem.tau - 1.0
        violation = max(g, 0.0)
        lam = max(0.0, lam + mu * g)
        if violation <= opts.feasibility_tol and step <= 1e-10:
            return x, lam, True
        if violation > 0.25 * previous:
            mu = min(mu * 10.0, MAX_PENALTY)
        previous = violation
    return x, lam, False


def polish(problem: LowerTailProblem, x0: np.ndarray) -> np.ndarray:
    """SLSQP で制約付き問題を直接解き直す。失敗時は入力を返す。"""

    def constraint(x):
        return 1.0 - problem.density(x) / problem.tau

    def constraint_jac(x):
        return -problem.density_grad(x)[1] / problem.tau

    result = minimize(
        problem.objective_grad,
        np.clip(x0, problem.floor, problem.upper),
        jac=True,
        method="SLSQP",
        bounds=problem.bounds,
        constraints=[{"type": "ineq", "fun": constraint, "jac": constraint_jac}],
        options={"maxiter": 500, "ftol": 1e-15},
    )
    if not np.all(np.isfinite(result.x)):
        return x0
    return result.x


def _run_restart(problem: LowerTailProblem, index: int, x0: np.ndarray, opts: OracleOptions) -> _RestartOutcome:
    # スタート点自身も候補に入れる（定数スタートは常に実行可能）
    candidates = [problem.repair(x0)]
    x_al, _, converged = augmented_lagrangian(problem, x0, opts)
    candidates.append(problem.repair(x_al))
    if opts.polish:
        candidates.append(problem.repair(polish(problem, x_al)))

    best = candidates[0]
    best_value = problem.objective(best)
    for x in candidates[1:]:
        value = problem.objective(x)
        if value < best_value - TIE_TOL:
            best, best_value = x, value
    return _RestartOutcome(index, best, best_value, converged)


# --- スタート点 --------------------------------------------------------------


def initial_points(problem: LowerTailProblem, target: float, opts: OracleOptions) -> list[np.ndarray]:
    """
    シード決定的なスタート点の列。

    - 0 番: 定数 target
    - 1 番: 前半・後半で分けた BIP_{floor, upper}
    - 以降: 3 つに 1 つは BIP 型の乱択、残りは一様乱択
    """
    k = problem.k
    lo, hi = problem.floor, problem.upper
    points = [np.full(problem.size, min(max(target, lo), hi))]

    for i in range(1, opts.restarts):
        rng = np.random.default_rng([opts.seed, i])
        if i == 1 and k >= 2:
            groups = np.arange(k) >= k // 2
            M = np.where(groups[:, None] == groups[None, :], lo, hi)
        elif i % 3 == 2 and k >= 2:
            groups = rng.integers(0, 2, size=k).astype(bool)
            a = rng.uniform(lo, target)
            b = rng.uniform(target, hi)
            M = np.where(groups[:, None] == groups[None, :], a, b)
        else:
            U = rng.uniform(lo, hi, size=(k, k))
            M = np.triu(U) + np.triu(U, 1).T
        points.append(problem.from_matrix(M))
    return points


# --- 公開 API ----------------------------------------------------------------


def _check_inputs(H: Graph, mode: EntropyFn, target: float, k: int) -> None:
    if H.edge_count < 1:
        raise ParameterError("the lower-tail problem needs a graph with at least one edge")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k!r}")
    if not 0.0 < target <= mode.upper_bound:
        raise ParameterError(
            f"target must lie in (0, {mode.upper_bound!r}] for {mode_label(mode)}, got {target!r}"
        )


def _sort_key(x: np.ndarray) -> tuple[float, ...]:
    return tuple(np.sort(x).tolist())


def _distinct(problem: LowerTailProblem, outcomes: list[_RestartOutcome], best: float, tol: float) -> list[StepGraphon]:
    kept: list[np.ndarray] = []
    for outcome in sorted(outcomes, key=lambda o: (o.objective, _sort_key(o.x))):
        if outcome.objective > best + tol:
            break
        if not any(np.allclose(np.sort(outcome.x), np.sort(x), atol=1e-6) for x in kept):
            kept.append(outcome.x)
    return [problem.to_graphon(x) for x in kept]


def solve_lt(
    H: Graph,
    mode: EntropyFn,
    target: float,
    k: int,
    opts: OracleOptions | None = None,
) -> OracleSolution:
    """
    k 等分ステップグラフォン上で下側裾の変分問題を解く。

    Args:
        H: 部分グラフ（辺 1 本以上）。
        mode: ``EntropyFn.finite_p(p)`` または ``EntropyFn.sparse()``。
        target: q（finite_p, 0 < q <= p）または r（sparse, 0 < r <= 1）。
        k: ブロック数。
        opts: 求解オプション。省略時は設定値。

    Returns:
        OracleSolution: 全スタートの中で最良の解。収束判定に失敗した場合も
        ``converged=False`` で返す。

    Raises:
        ParameterError: 入力が範囲外。
        BudgetExceededError: k^{v(H)} が予算超過。
    """
    mode = mode.derivative(0)
    _check_inputs(H, mode, target, k)
    check_budget(k, H.vertices)
    opts = opts or settings().oracle

    m = H.edge_count
    tau = target**m
    problem = LowerTailProblem(H, mode, tau, k, opts.floor)
    starts = initial_points(problem, target, opts)

    # 粗い解を 2 倍細分して埋め込む（k の解は k/2 の解以下になる）
    if opts.refine_from_coarse and k >= 2 and k % 2 == 0:
        coarse = solve_lt(H, mode, target, k // 2, opts)
        starts.append(problem.from_matrix(refine_uniform(coarse.graphon, 2).values))

    logger.debug(f"solve_lt: H={H}, {mode_label(mode)}, target={target!r}, k={k}, starts={len(starts)}")
    outcomes = parallel_map(
        lambda i: _run_restart(problem, i, starts[i], opts),
        range(len(starts)),
        threads=opts.threads,
    )
    for outcome in outcomes:
        publish_event(
            SolverTopic.RESTART_FINISHED,
            index=outcome.index,
            objective=outcome.objective,
            converged=outcome.converged,
        )

    best_value = min(o.objective for o in outcomes)
    ties = [o for o in outcomes if o.objective <= best_value + TIE_TOL]
    best = min(ties, key=lambda o: _sort_key(o.x))

    W = problem.to_graphon(best.x)
    t = density(H, W)
    feasible = t <= tau + opts.feasibility_tol
    boundary = count_boundary_blocks(W, mode)
    try:
        lam = fit_multiplier(H, W, mode)
        residual: float | None = stationarity_residual(H, W, lam, mode)
    except DomainError:
        lam = 0.0
        residual = None
    converged = feasible and (residual is None or residual <= opts.stationarity_tol)

    solution = OracleSolution(
        graphon=W,
        mode=mode_label(mode),
        target=target,
        k=k,
        objective=problem.objective(best.x),
        multiplier=lam,
        constraint_value=t,
        threshold=tau,
        feasibility_tol=opts.feasibility_tol,
        constraint_slack=tau - t,
        stationarity_residual=residual,
        boundary_blocks=boundary,
        restarts_used=len(starts),
        converged=converged,
        constant_objective=float(mode(target)),
        distinct_optima=_distinct(problem, outcomes, best_value, opts.near_optimal_tol),
        residual_note=FINITE_P_RESIDUAL_NOTE if mode.kind is EntropyKind.FINITE_P else None,
    )
    if not converged:
        logger.warning(
            f"solve_lt did not converge (k={k}, target={target!r}, residual={residual!r}); "
            "returning the best feasible point"
        )
    logger.info(f"solve_lt: objective={solution.objective!r}, constant={solution.constant_objective!r}")
    publish_event(SolverTopic.SOLVE_FINISHED, objective=solution.objective, restarts=len(starts))
    return solution
