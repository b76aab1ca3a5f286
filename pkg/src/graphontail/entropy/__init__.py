# __init__.py - エントロピー関数の公開モジュール

"""I_p と h を公開します。"""

from .functions import EntropyFn, EntropyKind, relative_entropy, sparse_entropy

__all__ = ["EntropyFn", "EntropyKind", "relative_entropy", "sparse_entropy"]
