# config.py - CLI の実行設定

"""
src/graphontail/cli/config.py

コマンドライン引数から組み立てる ``RunConfig`` と、それを数値設定ストアへ
反映する処理を提供します。
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from graphontail.core.errors import ParameterError
from graphontail.store.settings import NumericsConfig
from graphontail.store.store import Store

# 既定の出力ディレクトリを与える環境変数
OUTPUT_DIR_ENV = "GRAPHONTAIL_OUTPUT_DIR"


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def parse_override(text: str) -> tuple[str, Any]:
    """``KEY=VALUE`` を (パス, 値) に分解する。値は JSON として読めればその型にする。

    Raises:
        ParameterError: ``=`` を含まない。
    """
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise ParameterError(f"expected KEY=VALUE, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip(), value


class RunConfig(BaseModel):
    """
    1 回の CLI 実行の設定。

    Attributes:
        command: サブコマンド名。
        output_dir: 相対パスの出力先の基準（``--output-dir`` または環境変数）。
        seed: オラクル・シミュレーションのシード。
        threads: ワーカー数の上限。
        verbose: デバッグログを出すか。
        overrides: ``--set KEY=VALUE`` で指定した数値設定の上書き。
    """

    model_config = ConfigDict(frozen=True)

    command: str
    output_dir: Path = Field(default_factory=default_output_dir)
    seed: int = 0
    threads: int = Field(default=1, ge=1)
    verbose: bool = False
    overrides: dict[str, Any] = Field(default_factory=dict)

    def resolve_output(self, path: str | Path) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path

    def apply(self, store: Store[NumericsConfig]) -> None:
        """シード・スレッド数・上書きを設定ストアに反映する。

        Raises:
            ParameterError: 存在しないキー、または検証に失敗した値。
        """
        store.update_state("threads", self.threads)
        store.update_state("oracle.threads", self.threads)
        store.update_state("oracle.seed", self.seed)
        for key, value in self.overrides.items():
            try:
                store.update_state(key, value)
            except AttributeError as exc:
                raise ParameterError(f"unknown setting {key!r}") from exc
