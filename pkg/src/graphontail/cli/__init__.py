# __init__.py - コマンドラインの公開モジュール

from .config import RunConfig
from .main import build_parser, main, run
from .reporter import ProgressReporter

__all__ = ["RunConfig", "ProgressReporter", "build_parser", "run", "main"]
