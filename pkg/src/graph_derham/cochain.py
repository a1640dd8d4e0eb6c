"""
グラフのコチェイン複体

頂点形式 Ω⁰・辺形式 Ω¹、余境界作用素 D、随伴 D*（接続行列）、
ラプラシアン、調和代表元によるコホモロジー基底を扱う。

辺形式の座標は向きが与える基底 e(u, v) に関するもの。正準ペア (u, v) の
座標 x は x = ω(u, v)·σ(u, v) を満たす。
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import networkx as nx

from .exact_linalg import (
    RationalMatrix,
    Vector,
    add_vectors,
    is_zero_vector,
    project_orthogonal,
    scale_vector,
    sub_vectors,
    to_vector,
)
from .graph_core import (
    Graph,
    Subgraph,
    connected_components,
    induced_subgraph,
)


@dataclass(frozen=True)
class VertexForm:
    """頂点形式（頂点上の有理数値関数）"""

    graph: Graph
    values: Vector

    def __post_init__(self):
        object.__setattr__(self, "values", to_vector(self.values))
        if len(self.values) != self.graph.vertex_count:
            raise ValueError(
                f"頂点形式の長さ {len(self.values)} が頂点数 {self.graph.vertex_count} と一致しません"
            )

    def __call__(self, v: int) -> Fraction:
        return self.values[v]

    def __add__(self, other: "VertexForm") -> "VertexForm":
        return VertexForm(self.graph, add_vectors(self.values, other.values))

    def __sub__(self, other: "VertexForm") -> "VertexForm":
        return VertexForm(self.graph, sub_vectors(self.values, other.values))

    def scale(self, c) -> "VertexForm":
        return VertexForm(self.graph, scale_vector(Fraction(c), self.values))

    def is_zero(self) -> bool:
        return is_zero_vector(self.values)


@dataclass(frozen=True)
class EdgeForm:
    """
    辺形式

    values は向きが誘導する基底での座標。ω(u, v) の値は value(u, v) で得る。
    """

    graph: Graph
    values: Vector

    def __post_init__(self):
        object.__setattr__(self, "values", to_vector(self.values))
        if len(self.values) != self.graph.edge_count:
            raise ValueError(
                f"辺形式の長さ {len(self.values)} が辺数 {self.graph.edge_count} と一致しません"
            )

    @classmethod
    def from_pair_values(cls, graph: Graph, pair_values: dict) -> "EdgeForm":
        """
        向き付きペアの値 {(u, v): ω(u, v)} から辺形式を作成

        指定のない辺は 0。ω(v, u) = -ω(u, v) として座標に変換する。
        """
        coordinates = [Fraction(0)] * graph.edge_count
        for (u, v), value in pair_values.items():
            coordinates[graph.edge_id(u, v)] = Fraction(value) * graph.sigma(u, v)
        return cls(graph, tuple(coordinates))

    def value(self, u: int, v: int) -> Fraction:
        """ω(u, v)"""
        return self.values[self.graph.edge_id(u, v)] * self.graph.sigma(u, v)

    def __add__(self, other: "EdgeForm") -> "EdgeForm":
        return EdgeForm(self.graph, add_vectors(self.values, other.values))

    def __sub__(self, other: "EdgeForm") -> "EdgeForm":
        return EdgeForm(self.graph, sub_vectors(self.values, other.values))

    def scale(self, c) -> "EdgeForm":
        return EdgeForm(self.graph, scale_vector(Fraction(c), self.values))

    def is_zero(self) -> bool:
        return is_zero_vector(self.values)


Form = Union[VertexForm, EdgeForm]


def _values(f, expected: int, label: str) -> Vector:
    values = to_vector(f.values if isinstance(f, (VertexForm, EdgeForm)) else f)
    if len(values) != expected:
        raise ValueError(f"{label}の次元が一致しません: {len(values)} != {expected}")
    return values


def coboundary(g: Graph, f: Union[VertexForm, Sequence]) -> EdgeForm:
    """
    余境界 Df(u, v) = f(v) - f(u)

    Args:
        g: 向き付きグラフ
        f: 頂点形式（または値の列）

    Returns:
        Df の辺形式。正準辺 (u, v) の座標は σ·(f(v) - f(u))
    """
    values = _values(f, g.vertex_count, "頂点形式")
    return EdgeForm(g, tuple(
        sign * (values[v] - values[u]) for (u, v), sign in zip(g.edges, g.signs)
    ))


def adjoint(g: Graph, omega: Union[EdgeForm, Sequence]) -> VertexForm:
    """随伴 D* = 接続行列 I を辺形式に作用させる"""
    values = _values(omega, g.edge_count, "辺形式")
    result = [Fraction(0)] * g.vertex_count
    for e, x in enumerate(values):
        if x:
            tail, head = g.tail_head(e)
            result[tail] -= x
            result[head] += x
    return VertexForm(g, tuple(result))


@lru_cache(maxsize=1024)
def incidence_matrix(g: Graph) -> RationalMatrix:
    """
    接続行列 I（|V|×|E|、始点 -1・終点 +1）

    転置 Iᵀ が D を、I 自身が D* を表す。
    """
    rows = [[Fraction(0)] * g.edge_count for _ in range(g.vertex_count)]
    for e in range(g.edge_count):
        tail, head = g.tail_head(e)
        rows[tail][e] = Fraction(-1)
        rows[head][e] = Fraction(1)
    return RationalMatrix(g.vertex_count, g.edge_count, tuple(tuple(row) for row in rows))


def coboundary_matrix(g: Graph) -> RationalMatrix:
    return incidence_matrix(g).transpose()


def laplacians(g: Graph) -> Tuple[RationalMatrix, RationalMatrix]:
    """
    (Δ⁺, Δ⁻) = (D*D, DD*)

    Δ⁺ は |V|×|V| で次数行列から隣接行列を引いたもの、Δ⁻ は |E|×|E|。
    """
    incidence = incidence_matrix(g)
    d = incidence.transpose()
    return incidence @ d, d @ incidence


@dataclass(frozen=True)
class CohomologySpace:
    """
    調和代表元による H⁰ / H¹ の基底

    degree 0 は成分の指示関数、degree 1 は全域森の基本サイクル形式。
    pivots は座標を読み取る位置（成分の代表頂点・各サイクルの弦）で、
    pivots[j] で 0 でないのは basis[j] だけである。
    """

    graph: Graph
    degree: int
    basis: Tuple[Form, ...]
    supports: Tuple[Subgraph, ...]
    pivots: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return [form.values for form in self.basis]

    @property
    def ambient_dimension(self) -> int:
        return self.graph.vertex_count if self.degree == 0 else self.graph.edge_count

    def matrix(self) -> RationalMatrix:
        """基底ベクトルを列とする行列"""
        return RationalMatrix.from_columns(self.vectors(), self.ambient_dimension)

    def coordinates(self, form: Union[Form, Sequence]) -> Vector:
        """
        ker(D)（degree 0）または ker(D*)（degree 1）の元の基底座標

        Args:
            form: 調和な形式

        Returns:
            座標ベクトル

        Raises:
            ValueError: 形式が調和でない場合
        """
        values = _values(form, self.ambient_dimension, "形式")
        coords = tuple(
            values[p] / b.values[p] for p, b in zip(self.pivots, self.basis)
        )
        rebuilt = to_vector([0] * len(values))
        for c, b in zip(coords, self.basis):
            if c:
                rebuilt = add_vectors(rebuilt, scale_vector(c, b.values))
        if rebuilt != values:
            raise ValueError("形式が調和代表元の空間に含まれていません")
        return coords


def spanning_forest(g: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    """
    幅優先の全域森

    各成分の最小頂点を根とし、隣接頂点を昇順に訪問する。

    Returns:
        (親（根は -1）, 深さ, 木辺の番号)
    """
    parent = [-1] * g.vertex_count
    depth = [0] * g.vertex_count
    tree_edges = []
    nx_graph = g.to_networkx()
    for component in connected_components(g):
        for v, w in nx.bfs_edges(nx_graph, component[0]):
            parent[w] = v
            depth[w] = depth[v] + 1
            tree_edges.append(g.edge_id(v, w))
    return tuple(parent), tuple(depth), tuple(sorted(tree_edges))


def _tree_path_to(parent: Sequence[int], depth: Sequence[int], a: int, b: int) -> Tuple[List[int], List[int]]:
    # a, b から共通祖先までの経路（両端を含む）
    path_a, path_b = [a], [b]
    while depth[path_a[-1]] > depth[path_b[-1]]:
        path_a.append(parent[path_a[-1]])
    while depth[path_b[-1]] > depth[path_a[-1]]:
        path_b.append(parent[path_b[-1]])
    while path_a[-1] != path_b[-1]:
        path_a.append(parent[path_a[-1]])
        path_b.append(parent[path_b[-1]])
    return path_a, path_b


def fundamental_cycle(g: Graph, parent: Sequence[int], depth: Sequence[int], chord: int) -> Tuple[int, ...]:
    """
    弦 (u, v) の基本サイクルを u → v → ... → u の順で返す（閉じない頂点列）
    """
    u, v = g.edges[chord]
    path_v, path_u = _tree_path_to(parent, depth, v, u)
    walk = [u] + path_v + list(reversed(path_u[:-1]))
    return tuple(walk[:-1])


def cycle_form(g: Graph, cycle: Sequence[int]) -> EdgeForm:
    """サイクルを与えられた順に一周するとき各辺で値 1 をとる辺形式"""
    coordinates = [Fraction(0)] * g.edge_count
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        coordinates[g.edge_id(a, b)] += g.sigma(a, b)
    return EdgeForm(g, tuple(coordinates))


@lru_cache(maxsize=1024)
def cohomology(g: Graph, degree: int) -> CohomologySpace:
    """
    H⁰ または H¹ の調和代表元による基底を計算

    Args:
        g: 向き付きグラフ
        degree: 0 または 1

    Returns:
        CohomologySpace

    Raises:
        RuntimeError: 基本サイクル形式が ker(D*) に入らない場合
    """
    if degree == 0:
        components = connected_components(g)
        basis = []
        for component in components:
            members = set(component)
            basis.append(VertexForm(g, tuple(1 if v in members else 0 for v in range(g.vertex_count))))
        basis = tuple(basis)
        supports = tuple(induced_subgraph(g, component) for component in components)
        return CohomologySpace(g, 0, basis, supports, tuple(c[0] for c in components))

    if degree != 1:
        raise ValueError(f"次数は 0 か 1 でなければなりません: {degree}")

    parent, depth, tree_edges = spanning_forest(g)
    tree_set = set(tree_edges)
    chords = tuple(e for e in range(g.edge_count) if e not in tree_set)
    cycles = []
    basis = []
    for chord in chords:
        cycle = fundamental_cycle(g, parent, depth, chord)
        form = cycle_form(g, cycle)
        if not adjoint(g, form).is_zero():
            raise RuntimeError(f"基本サイクル形式が ker(D*) に入っていません: 弦 {g.edges[chord]}")
        cycles.append(cycle)
        basis.append(form)
    supports = tuple(support_subgraph(form) for form in basis)
    return CohomologySpace(g, 1, tuple(basis), supports, chords, tuple(cycles))


def support_subgraph(f: Form) -> Subgraph:
    """
    形式の台

    頂点形式は非零頂点の誘導部分グラフ、辺形式は非零辺とその端点。
    """
    if isinstance(f, VertexForm):
        return induced_subgraph(f.graph, [v for v, x in enumerate(f.values) if x])
    return Subgraph.from_edges(f.graph, [e for e, x in enumerate(f.values) if x])


def harmonic_part(g: Graph, omega: Union[EdgeForm, Sequence]) -> EdgeForm:
    """辺形式の ker(D*) への直交射影（H¹ の類の調和代表元）"""
    values = _values(omega, g.edge_count, "辺形式")
    return EdgeForm(g, project_orthogonal(values, cohomology(g, 1).vectors()))


def harmonic_vertex_part(g: Graph, f: Union[VertexForm, Sequence]) -> VertexForm:
    """頂点形式の ker(D) への直交射影（成分ごとの平均値）"""
    values = _values(f, g.vertex_count, "頂点形式")
    return VertexForm(g, project_orthogonal(values, cohomology(g, 0).vectors()))
