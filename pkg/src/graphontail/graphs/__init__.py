# __init__.py - グラフ関連の公開モジュール

"""部分グラフ H の表現と生成関数を公開します。"""

from .graph import (
    Graph,
    format_edge_list,
    graph_library,
    is_bipartite,
    parse_edge_list,
    read_edge_list,
)

__all__ = [
    "Graph",
    "is_bipartite",
    "graph_library",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
]
