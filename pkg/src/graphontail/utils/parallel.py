# parallel.py - スレッドプールでの並列実行ユーティリティ

"""
src/graphontail/utils/parallel.py

独立なタスク（多重スタート・格子点・試行バッチ）を executor で並列に走らせ、
結果を入力順に返すユーティリティ。
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """
    ``func`` を各要素に適用し、入力順に並んだ結果リストを返す。

    - threads <= 1 の場合: 呼び出し元スレッドで順に実行
    - それ以外: ThreadPoolExecutor に投げ、完了順によらず入力順で集約

    集約順が入力順に固定されるので、スレッド数によって結果は変わらない。

    Args:
        func (Callable): 1 引数の関数
        items (Iterable): 入力
        threads (int): 最大ワーカー数

    Returns:
        list: 入力順の結果
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))


def chunked(total: int, size: int) -> Iterator[range]:
    """``range(total)`` を長さ ``size`` 以下の連続区間に分割する。"""
    for start in range(0, total, size):
        yield range(start, min(start + size, total))
