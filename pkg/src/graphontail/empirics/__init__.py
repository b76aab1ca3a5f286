# __init__.py - モンテカルロ検証の公開モジュール

"""G(n,p) の下側裾確率の推定と CSV 出力を公開します。"""

from .montecarlo import (
    CSV_COLUMNS,
    HomomorphismCounter,
    TailEstimate,
    estimates_to_csv,
    homomorphism_count,
    lower_tail_estimate,
    sample_adjacency,
    sample_densities,
    sample_subgraph_density,
    tail_curve,
    triangle_count_bitset,
    wilson_interval,
)

__all__ = [
    "CSV_COLUMNS",
    "TailEstimate",
    "HomomorphismCounter",
    "homomorphism_count",
    "triangle_count_bitset",
    "sample_adjacency",
    "sample_densities",
    "sample_subgraph_density",
    "wilson_interval",
    "lower_tail_estimate",
    "tail_curve",
    "estimates_to_csv",
]
