# graph.py - 有限単純グラフ H の表現

"""
src/graphontail/graphs/graph.py

変分問題で固定する部分グラフ H を表すモデルと、代表的なグラフ族の生成、
エッジリスト形式の読み書きを提供します。
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from graphontail.core.errors import GraphError


class Graph(BaseModel):
    """
    頂点 0..v-1 を持つ有限単純グラフ。

    辺は (min, max) の正規形でソートして保持するので、反復順は決定的。

    Attributes:
        vertices: 頂点数 v(H)。
        edges: 無向辺の組。
    """

    model_config = ConfigDict(frozen=True)

    vertices: int
    edges: tuple[tuple[int, int], ...]

    @field_validator("edges", mode="before")
    @classmethod
    def _canonical_edges(cls, value):
        try:
            pairs = [(int(u), int(v)) for u, v in value]
        except (TypeError, ValueError) as exc:
            raise ValueError("edges must be pairs of integers") from exc
        return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))

    @model_validator(mode="after")
    def _check_simple(self) -> "Graph":
        if self.vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u}, {v}) uses a vertex outside 0..{self.vertices - 1}")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("repeated edge")
        return self

    @property
    def edge_count(self) -> int:
        """e(H)。"""
        return len(self.edges)

    @property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @property
    def max_degree(self) -> int:
        """最大次数 Δ。"""
        return max(self.degrees)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertices))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """任意のラベルを持つ networkx グラフを 0..v-1 に振り直して変換する。"""
        relabeled = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return cls(vertices=relabeled.number_of_nodes(), edges=tuple(relabeled.edges()))

    def __str__(self) -> str:
        return f"Graph(v={self.vertices}, e={self.edge_count})"


def is_bipartite(H: Graph) -> bool:
    """奇閉路を含まなければ True。"""
    return nx.is_bipartite(H.to_networkx())


def _make(g: nx.Graph) -> Graph:
    return Graph.from_networkx(g)


# 族名 -> (最小サイズ, 生成関数)
_FAMILIES: dict[str, tuple[int, Callable[[int, int | None], nx.Graph]]] = {
    "complete": (2, lambda n, _: nx.complete_graph(n)),
    "cycle": (3, lambda n, _: nx.cycle_graph(n)),
    "star": (1, lambda n, _: nx.star_graph(n)),
    "path": (2, lambda n, _: nx.path_graph(n)),
    "complete_bipartite": (1, lambda s, t: nx.complete_bipartite_graph(s, t if t is not None else s)),
}


def graph_library(name: str, size: int, other: int | None = None) -> Graph:
    """名前付きのグラフ族から H を生成する。

    Args:
        name: ``complete`` (K_t), ``cycle`` (C_t), ``star`` (K_{1,t}),
            ``path`` (t 頂点の P_t), ``complete_bipartite`` (K_{s,t})。
        size: 族のサイズパラメータ。
        other: ``complete_bipartite`` の 2 つ目の部の大きさ（省略時は ``size``）。

    Returns:
        生成されたグラフ。

    Raises:
        GraphError: 未知の族名、または不正なサイズ。
    """
    key = name.lower().replace("-", "_")
    if key not in _FAMILIES:
        raise GraphError(f"Unknown graph family '{name}'. Known: {', '.join(sorted(_FAMILIES))}")

    min_size, factory = _FAMILIES[key]
    if size < min_size or (other is not None and other < 1):
        raise GraphError(f"Invalid size {size} for family '{name}' (needs >= {min_size})")

    return _make(factory(size, other))


def parse_edge_list(text: str) -> Graph:
    """``"u v"`` を 1 行ずつ並べたテキストからグラフを作る。

    空行と ``#`` 以降は無視する。頂点数は最大ラベル + 1。

    Raises:
        GraphError: 行が解釈できない、辺が一本もない、単純グラフでない場合。
    """
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise GraphError(f"line {lineno}: vertex labels must be integers") from exc
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex label")
        edges.append((u, v))

    if not edges:
        raise GraphError("edge list is empty")

    try:
        return Graph(vertices=max(max(e) for e in edges) + 1, edges=edges)
    except ValueError as exc:
        raise GraphError(str(exc)) from exc


def read_edge_list(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"Cannot read edge list '{path}': {exc}") from exc
    return parse_edge_list(text)


def format_edge_list(H: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in H.edges)
