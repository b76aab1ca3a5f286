# __init__.py - ユーティリティを公開するモジュール

"""並列実行ユーティリティを公開します。"""

from .parallel import chunked, parallel_map

__all__ = ["parallel_map", "chunked"]
