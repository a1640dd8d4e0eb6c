"""
有限単純グラフ・向き付け・部分グラフの基本表現
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Orientation:
    """
    辺ごとの符号 σ(u, v) ∈ {+1, -1}

    正準ペア u < v に対する値を保持する。σ(v, u) = -σ(u, v)。
    """

    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(sign not in (1, -1) for sign in self.signs):
            raise ValueError(f"向きの値は +1 か -1 でなければなりません: {self.signs}")

    def reversed(self) -> "Orientation":
        return Orientation(tuple(-sign for sign in self.signs))


@dataclass(frozen=True)
class Graph:
    """
    有限単純グラフ

    辺は (min, max) の組として辞書式順に一度だけ保持する。向きは
    Orientation が別に持つ（省略時は全辺 +1、すなわち小さい頂点から大きい頂点へ）。
    """

    vertex_count: int
    edges: Tuple[Edge, ...]
    orientation: Optional[Orientation] = field(default=None, compare=True)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError(f"頂点数が負です: {self.vertex_count}")
        for u, v in self.edges:
            if not (0 <= u < v < self.vertex_count):
                raise ValueError(f"辺が正準形ではありません: ({u}, {v})")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("辺リストが整列済みかつ重複なしではありません")
        if self.orientation is not None and len(self.orientation.signs) != len(self.edges):
            raise ValueError(
                f"向きの長さ {len(self.orientation.signs)} が辺数 {len(self.edges)} と一致しません"
            )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        neighbors: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neighbors)

    @cached_property
    def incident_edges(self) -> Tuple[Tuple[int, ...], ...]:
        incident: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
        return tuple(tuple(es) for es in incident)

    @property
    def signs(self) -> Tuple[int, ...]:
        if self.orientation is None:
            return (1,) * len(self.edges)
        return self.orientation.signs

    @property
    def oriented(self) -> Orientation:
        return self.orientation if self.orientation is not None else Orientation(self.signs)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        """頂点の組から辺番号を得る（向きは無視）"""
        key = (min(u, v), max(u, v))
        if key not in self.edge_index:
            raise ValueError(f"辺 ({u}, {v}) はグラフに存在しません")
        return self.edge_index[key]

    def sigma(self, u: int, v: int, orientation: Optional[Orientation] = None) -> int:
        """
        向き付きペア (u, v) に対する σ(u, v)

        Args:
            u: 始点
            v: 終点
            orientation: 使う向き（省略時はグラフ自身の向き）

        Returns:
            +1 または -1
        """
        signs = orientation.signs if orientation is not None else self.signs
        sign = signs[self.edge_id(u, v)]
        return sign if u < v else -sign

    def tail_head(self, e: int) -> Edge:
        u, v = self.edges[e]
        return (u, v) if self.signs[e] == 1 else (v, u)

    def with_orientation(self, signs: Optional[Sequence[int]]) -> "Graph":
        if signs is None:
            return Graph(self.vertex_count, self.edges)
        return Graph(self.vertex_count, self.edges, Orientation(tuple(signs)))

    def unoriented(self) -> "Graph":
        return Graph(self.vertex_count, self.edges)

    def to_networkx(self) -> nx.Graph:
        """
        向きを忘れた networkx のグラフ

        頂点 0..n-1 と辺を昇順に追加するので、各頂点の隣接頂点も昇順に並ぶ。
        """
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        nx_graph.add_edges_from(self.edges)
        return nx_graph


def build_graph(vertex_count: int, edge_pairs: Iterable[Sequence[int]]) -> Graph:
    """
    頂点数と辺の組から正準形のグラフを作成

    重複や逆向きの重複は 1 本にまとめる。

    Args:
        vertex_count: 頂点数
        edge_pairs: 辺 (u, v) の列

    Returns:
        グラフ
    """
    canonical = set()
    for pair in edge_pairs:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise ValueError(f"ループ辺は許可されていません: ({u}, {v})")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValueError(f"頂点番号が範囲外です: ({u}, {v}), 頂点数 {vertex_count}")
        canonical.add((min(u, v), max(u, v)))
    return Graph(vertex_count, tuple(sorted(canonical)))


def reverse_orientation(g: Graph) -> Graph:
    """全辺の向きを反転したグラフ -Γ"""
    return g.with_orientation(g.oriented.reversed().signs)


def relabel_graph(g: Graph, images: Sequence[int]) -> Graph:
    """
    頂点 v を images[v] に付け替えたグラフ

    向きは辺ごとに同じ方向を指すよう符号を付け直す。
    """
    if sorted(images) != list(range(g.vertex_count)):
        raise ValueError("images は頂点の置換でなければなりません")
    pairs = []
    for e, (u, v) in enumerate(g.edges):
        tail, head = g.tail_head(e)
        a, b = images[tail], images[head]
        pairs.append(((min(a, b), max(a, b)), 1 if a < b else -1))
    pairs.sort()
    relabelled = Graph(g.vertex_count, tuple(edge for edge, _ in pairs))
    if g.orientation is None:
        return relabelled
    return relabelled.with_orientation([sign for _, sign in pairs])


def disjoint_union(*graphs: Graph) -> Graph:
    """頂点番号をずらして並べた非交和（向きも引き継ぐ）"""
    offset = 0
    pairs = []
    for g in graphs:
        for e, (u, v) in enumerate(g.edges):
            pairs.append(((u + offset, v + offset), g.signs[e]))
        offset += g.vertex_count
    pairs.sort()
    union = Graph(offset, tuple(edge for edge, _ in pairs))
    if all(g.orientation is None for g in graphs):
        return union
    return union.with_orientation([sign for _, sign in pairs])


def connected_components(g: Graph) -> Tuple[Tuple[int, ...], ...]:
    """
    連結成分への分割

    各成分は頂点番号の昇順、成分同士は最小頂点の昇順に並ぶ。

    Args:
        g: グラフ

    Returns:
        成分のタプル
    """
    components = (tuple(sorted(c)) for c in nx.connected_components(g.to_networkx()))
    return tuple(sorted(components))


def component_labels(g: Graph) -> Tuple[int, ...]:
    """各頂点が属する成分の代表（最小頂点番号）"""
    labels = [0] * g.vertex_count
    for component in connected_components(g):
        for v in component:
            labels[v] = component[0]
    return tuple(labels)


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def betti_numbers(g: Graph) -> Tuple[int, int]:
    """(b0, b1) = (成分数, |E| - |V| + b0)"""
    b0 = len(connected_components(g))
    return b0, g.edge_count - g.vertex_count + b0


def min_valency(g: Graph) -> int:
    if g.vertex_count == 0:
        raise ValueError("空グラフの最小次数は定義されません")
    return min(g.degree(v) for v in range(g.vertex_count))


@dataclass(frozen=True)
class Subgraph:
    """
    親グラフの部分グラフ（誘導部分グラフとは限らない）

    両端点を含んでいても辺を含まないことがある。
    """

    parent: Graph
    vertices: FrozenSet[int]
    edges: FrozenSet[int]

    def __post_init__(self):
        for v in self.vertices:
            if not 0 <= v < self.parent.vertex_count:
                raise ValueError(f"頂点 {v} は親グラフに存在しません")
        for e in self.edges:
            if not 0 <= e < self.parent.edge_count:
                raise ValueError(f"辺番号 {e} は親グラフに存在しません")
            u, v = self.parent.edges[e]
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"辺 ({u}, {v}) の端点が部分グラフに含まれていません")

    @classmethod
    def from_edges(cls, parent: Graph, edges: Iterable[int], vertices: Iterable[int] = ()) -> "Subgraph":
        """辺集合（と追加頂点）から端点込みの部分グラフを作成"""
        edges = frozenset(edges)
        vertex_set = set(vertices)
        for e in edges:
            vertex_set.update(parent.edges[e])
        return cls(parent, frozenset(vertex_set), edges)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def edge_pairs(self) -> List[Edge]:
        return [self.parent.edges[e] for e in sorted(self.edges)]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.parent.incident_edges[v] if e in self.edges)

    def to_graph(self) -> Tuple[Graph, Tuple[int, ...]]:
        """
        部分グラフを単独のグラフとして取り出す

        頂点は親の番号の昇順に 0.. と付け直す（単調なので辺の正準順と向きは保たれる）。

        Returns:
            グラフと、新番号 → 親番号の対応
        """
        order = tuple(sorted(self.vertices))
        position = {v: i for i, v in enumerate(order)}
        chosen = sorted(self.edges)
        edges = tuple((position[self.parent.edges[e][0]], position[self.parent.edges[e][1]]) for e in chosen)
        graph = Graph(len(order), edges)
        if self.parent.orientation is not None:
            graph = graph.with_orientation([self.parent.signs[e] for e in chosen])
        return graph, order


def full_subgraph(g: Graph) -> Subgraph:
    return Subgraph(g, frozenset(range(g.vertex_count)), frozenset(range(g.edge_count)))


def empty_subgraph(g: Graph) -> Subgraph:
    return Subgraph(g, frozenset(), frozenset())


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Subgraph:
    """頂点集合が誘導する部分グラフ（分解モジュール用）"""
    vertex_set = frozenset(vertices)
    edges = frozenset(
        e for e, (u, v) in enumerate(g.edges) if u in vertex_set and v in vertex_set
    )
    return Subgraph(g, vertex_set, edges)


def _check_same_parent(a: Subgraph, b: Subgraph) -> None:
    if a.parent != b.parent:
        raise ValueError("異なる親グラフの部分グラフは組み合わせられません")


def subgraph_union(a: Subgraph, b: Subgraph) -> Subgraph:
    _check_same_parent(a, b)
    return Subgraph(a.parent, a.vertices | b.vertices, a.edges | b.edges)


def subgraph_intersection(a: Subgraph, b: Subgraph) -> Subgraph:
    """頂点と辺それぞれの共通部分（誘導部分グラフではない）"""
    _check_same_parent(a, b)
    return Subgraph(a.parent, a.vertices & b.vertices, a.edges & b.edges)
