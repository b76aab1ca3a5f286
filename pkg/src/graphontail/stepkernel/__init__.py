# __init__.py - ステップカーネル関連の公開モジュール

"""ステップカーネル・グラフォンと密度計算を公開します。"""

from .density import (
    check_budget,
    density,
    density_values,
    derivative_values,
    expect,
    functional_derivative,
    pointwise_map,
)
from .kernel import (
    StepGraphon,
    StepKernel,
    as_graphon,
    bip,
    combine,
    common_refinement,
    constant,
    constant_kernel,
    permute_blocks,
    refine_uniform,
    split_block,
)

__all__ = [
    # kernel
    "StepKernel",
    "StepGraphon",
    "as_graphon",
    "constant",
    "constant_kernel",
    "bip",
    "refine_uniform",
    "split_block",
    "permute_blocks",
    "common_refinement",
    "combine",
    # density
    "density",
    "functional_derivative",
    "pointwise_map",
    "expect",
    "check_budget",
    "density_values",
    "derivative_values",
]
