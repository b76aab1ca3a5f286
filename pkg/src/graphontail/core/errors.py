# errors.py - ライブラリ共通の例外クラス

"""
src/graphontail/core/errors.py

数値ルーチンが送出する例外の階層を定義します。

「非確定」「証拠なし」「打ち切り」は例外ではなく戻り値で表現し、
ここにあるのは呼び出し側の誤りか資源不足だけです。
"""

from __future__ import annotations


class GraphontailError(Exception):
    """graphontail が送出する全例外の基底クラス。"""


class ParameterError(GraphontailError, ValueError):
    """パラメータが許容範囲外、または前提条件を満たさない。"""


class DomainError(GraphontailError, ValueError):
    """関数を定義域の外で評価しようとした。"""


class AdmissibleDomainError(DomainError):
    """BIP ギャップ関数の許容区間外で評価しようとした。

    Attributes:
        lo: 許容区間の下端。
        hi: 許容区間の上端。
    """

    def __init__(self, x: float, lo: float, hi: float) -> None:
        self.x = x
        self.lo = lo
        self.hi = hi
        super().__init__(f"x={x!r} is outside the admissible interval [{lo!r}, {hi!r}]")


class BudgetExceededError(GraphontailError, RuntimeError):
    """列挙・計数の予算を超えた。近似には切り替えない。"""

    def __init__(self, required: float, budget: float, what: str = "terms") -> None:
        self.required = required
        self.budget = budget
        super().__init__(f"Enumeration budget exceeded: {required:.3g} {what} > {budget:.3g}")


class GraphError(GraphontailError, ValueError):
    """不正なグラフ、未知のグラフ族、読めないエッジリスト。"""


class UnknownIdentifierError(GraphontailError, KeyError):
    """登録されていない曲線・関数識別子。"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown identifier"


class SolverError(GraphontailError, RuntimeError):
    """求解・求根が続行不能になった（ブラケットが符号変化を持たない等）。"""
