# __init__.py - 設定ストア関連の公開モジュール

"""数値設定とそれを保持する Store を公開します。"""

from .settings import NumericsConfig, OracleOptions
from .store import Store, get_store, settings

__all__ = ["Store", "get_store", "settings", "NumericsConfig", "OracleOptions"]
