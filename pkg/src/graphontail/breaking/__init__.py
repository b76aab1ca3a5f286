# __init__.py - 対称性の破れ探索の公開モジュール

"""BIP 族による破れの証拠と探索を公開します。"""

from .search import (
    CriticalTriple,
    critical_triple,
    find_breaking,
    find_breaking_sparse,
    minimize_bip_gap,
    minimize_bip_gap_sparse,
    scale_witness,
)
from .witness import (
    BreakingWitness,
    bip_admissible_interval,
    bip_admissible_interval_sparse,
    bip_gap,
    bip_gap_sparse,
    bip_k3_density,
    bip_partner,
    make_witness,
)

__all__ = [
    "BreakingWitness",
    "CriticalTriple",
    "bip_gap",
    "bip_gap_sparse",
    "bip_k3_density",
    "bip_partner",
    "bip_admissible_interval",
    "bip_admissible_interval_sparse",
    "make_witness",
    "minimize_bip_gap",
    "minimize_bip_gap_sparse",
    "find_breaking",
    "find_breaking_sparse",
    "scale_witness",
    "critical_triple",
]
