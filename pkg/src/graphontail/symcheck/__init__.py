# __init__.py - 対称性証明書の公開モジュール

"""接線条件のギャップ関数と証明書チェッカーを公開します。"""

from .certificates import (
    Certificate,
    Verdict,
    lt_h_general_certificate,
    lt_h_k3_certificate,
    lt_k3_certificate,
    ut_k3_certificate,
)
from .gaps import (
    HExpGap,
    LtHK3Gap,
    LtK3Gap,
    TangentGap,
    UtK3Gap,
    gap_function,
    tangent_gap,
)

__all__ = [
    "Certificate",
    "Verdict",
    "lt_k3_certificate",
    "ut_k3_certificate",
    "lt_h_k3_certificate",
    "lt_h_general_certificate",
    "TangentGap",
    "LtK3Gap",
    "UtK3Gap",
    "LtHK3Gap",
    "HExpGap",
    "gap_function",
    "tangent_gap",
]
