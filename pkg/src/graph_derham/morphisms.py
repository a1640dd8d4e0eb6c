"""
グラフ準同型・チェインの押し出し・形式の引き戻し・コホモロジーへの誘導写像
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from .cochain import (
    CohomologySpace,
    EdgeForm,
    VertexForm,
    adjoint,
    cohomology,
    harmonic_part,
)
from .exact_linalg import RationalMatrix, Vector, to_vector
from .graph_core import Graph, Subgraph


@dataclass(frozen=True)
class GraphHomomorphism:
    """
    隣接関係を保つ頂点写像 source → target

    構築時に検証するので、不正な写像は値として存在しない。
    辺の両端を同じ頂点に潰す写像はループを作るため許されない。
    """

    source: Graph
    target: Graph
    vertex_map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", tuple(int(x) for x in self.vertex_map))
        if len(self.vertex_map) != self.source.vertex_count:
            raise ValueError(
                f"頂点写像の長さ {len(self.vertex_map)} が頂点数 {self.source.vertex_count} と一致しません"
            )
        for image in self.vertex_map:
            if not 0 <= image < self.target.vertex_count:
                raise ValueError(f"像 {image} は行き先のグラフに存在しません")
        for u, v in self.source.edges:
            fu, fv = self.vertex_map[u], self.vertex_map[v]
            if fu == fv:
                raise ValueError(f"辺 ({u}, {v}) が頂点 {fu} に潰れます")
            if not self.target.has_edge(fu, fv):
                raise ValueError(f"辺 ({u}, {v}) の像 ({fu}, {fv}) は辺ではありません")

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def is_isomorphism(self) -> bool:
        """頂点の全単射かつ辺数が等しい（単射なら辺も単射に写る）"""
        return (
            self.source.vertex_count == self.target.vertex_count
            and len(set(self.vertex_map)) == self.source.vertex_count
            and self.source.edge_count == self.target.edge_count
        )


@dataclass(frozen=True)
class ChainVector:
    """
    0-チェインまたは 1-チェイン

    1-チェインの係数は正準辺 (u, v), u < v ごとに持ち、(v, u) = -(u, v) で同一視する。
    """

    graph: Graph
    degree: int
    coefficients: Vector

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError(f"チェインの次数は 0 か 1 です: {self.degree}")
        object.__setattr__(self, "coefficients", to_vector(self.coefficients))
        expected = self.graph.vertex_count if self.degree == 0 else self.graph.edge_count
        if len(self.coefficients) != expected:
            raise ValueError(f"チェインの長さ {len(self.coefficients)} が {expected} と一致しません")

    @classmethod
    def from_vertices(cls, graph: Graph, terms: Dict[int, object]) -> "ChainVector":
        coefficients = [Fraction(0)] * graph.vertex_count
        for v, c in terms.items():
            coefficients[v] += Fraction(c)
        return cls(graph, 0, tuple(coefficients))

    @classmethod
    def from_pairs(cls, graph: Graph, terms: Dict[Tuple[int, int], object]) -> "ChainVector":
        """順序付きペアの形式和 Σ c·(u, v) から 1-チェインを作成"""
        coefficients = [Fraction(0)] * graph.edge_count
        for (u, v), c in terms.items():
            coefficients[graph.edge_id(u, v)] += Fraction(c) if u < v else -Fraction(c)
        return cls(graph, 1, tuple(coefficients))


def pushforward(h: GraphHomomorphism, c: ChainVector) -> ChainVector:
    """
    頂点写像の線形拡張によるチェインの押し出し

    Args:
        h: 準同型
        c: source 上のチェイン

    Returns:
        target 上のチェイン
    """
    if c.graph != h.source:
        raise ValueError("チェインが準同型の定義域に属していません")
    if c.degree == 0:
        coefficients = [Fraction(0)] * h.target.vertex_count
        for v, x in enumerate(c.coefficients):
            coefficients[h(v)] += x
        return ChainVector(h.target, 0, tuple(coefficients))

    coefficients = [Fraction(0)] * h.target.edge_count
    for e, x in enumerate(c.coefficients):
        if not x:
            continue
        u, v = h.source.edges[e]
        fu, fv = h(u), h(v)
        coefficients[h.target.edge_id(fu, fv)] += x if fu < fv else -x
    return ChainVector(h.target, 1, tuple(coefficients))


def pullback_vertex(h: GraphHomomorphism, f: Union[VertexForm, Sequence]) -> VertexForm:
    """F*f(v) = f(Fv)"""
    values = to_vector(f.values if isinstance(f, VertexForm) else f)
    if len(values) != h.target.vertex_count:
        raise ValueError("頂点形式が準同型の行き先に属していません")
    return VertexForm(h.source, tuple(values[h(v)] for v in range(h.source.vertex_count)))


def pullback_edge(h: GraphHomomorphism, f: Union[EdgeForm, Sequence]) -> EdgeForm:
    """
    F*ω(v, w) = ω(Fv, Fw)

    座標は両グラフの向きが誘導する基底で計算する。source の正準辺 (v, w) の
    座標は ω(Fv, Fw)·σ₁(v, w)。
    """
    values = to_vector(f.values if isinstance(f, EdgeForm) else f)
    if len(values) != h.target.edge_count:
        raise ValueError("辺形式が準同型の行き先に属していません")
    source, target = h.source, h.target
    coordinates = []
    for e, (v, w) in enumerate(source.edges):
        fv, fw = h(v), h(w)
        coordinates.append(values[target.edge_id(fv, fw)] * target.sigma(fv, fw) * source.signs[e])
    return EdgeForm(source, tuple(coordinates))


def pullback_matrix(h: GraphHomomorphism, degree: int) -> RationalMatrix:
    """
    引き戻し F*: Ωᵖ(target) → Ωᵖ(source) の行列

    Args:
        h: 準同型
        degree: 0 または 1

    Returns:
        degree 0 なら |V₁|×|V₂|、degree 1 なら |E₁|×|E₂|
    """
    source, target = h.source, h.target
    if degree == 0:
        rows = [[Fraction(0)] * target.vertex_count for _ in range(source.vertex_count)]
        for v in range(source.vertex_count):
            rows[v][h(v)] = Fraction(1)
        return RationalMatrix(source.vertex_count, target.vertex_count, tuple(map(tuple, rows)))
    if degree != 1:
        raise ValueError(f"次数は 0 か 1 でなければなりません: {degree}")
    rows = [[Fraction(0)] * target.edge_count for _ in range(source.edge_count)]
    for e, (v, w) in enumerate(source.edges):
        fv, fw = h(v), h(w)
        rows[e][target.edge_id(fv, fw)] = Fraction(source.signs[e] * target.sigma(fv, fw))
    return RationalMatrix(source.edge_count, target.edge_count, tuple(map(tuple, rows)))


def form_pullback_matrix(h: GraphHomomorphism) -> RationalMatrix:
    """Ω⁰ ⊕ Ω¹ 上の引き戻し（ブロック対角）"""
    p0 = pullback_matrix(h, 0)
    p1 = pullback_matrix(h, 1)
    rows = []
    for row in p0.entries:
        rows.append(row + (Fraction(0),) * p1.cols)
    for row in p1.entries:
        rows.append((Fraction(0),) * p0.cols + row)
    return RationalMatrix(p0.rows + p1.rows, p0.cols + p1.cols, tuple(rows))


def induced_cohomology_map(h: GraphHomomorphism, degree: int) -> RationalMatrix:
    """
    F*: Hᵖ(target) → Hᵖ(source) の行列

    列 j は target の基底 j の引き戻しを source の基底で表した座標。degree 1 では
    引き戻しを source の ker(D*) へ直交射影してから座標を読む。自己同型では
    射影は恒等になるはずなので、射影せずに ker(D*) に入ることを確認する。

    Args:
        h: 準同型
        degree: 0 または 1

    Returns:
        dim Hᵖ(source) × dim Hᵖ(target) の行列

    Raises:
        RuntimeError: 自己同型の引き戻しが ker(D*) から外れた場合
    """
    source_space = cohomology(h.source, degree)
    target_space = cohomology(h.target, degree)
    columns = []
    for form in target_space.basis:
        if degree == 0:
            pulled = pullback_vertex(h, form)
        else:
            pulled = pullback_edge(h, form)
            if h.source == h.target and h.is_isomorphism():
                if not adjoint(h.source, pulled).is_zero():
                    raise RuntimeError("自己同型の引き戻しが ker(D*) を保ちませんでした")
            else:
                pulled = harmonic_part(h.source, pulled)
        columns.append(source_space.coordinates(pulled))
    return RationalMatrix.from_columns(columns, source_space.dimension)


def pullback_forms_fixed(g: Graph, images: Sequence[int], space: CohomologySpace) -> bool:
    """
    自己同型 images による引き戻しが space の基底形式をすべて固定するか

    準同型の検証と行列の構築を省いた高速判定（全列挙用）。
    """
    for form in space.basis:
        values = form.values
        if space.degree == 0:
            if any(values[images[v]] != values[v] for v in range(g.vertex_count)):
                return False
            continue
        for e, (v, w) in enumerate(g.edges):
            fv, fw = images[v], images[w]
            pulled = values[g.edge_id(fv, fw)] * g.sigma(fv, fw) * g.signs[e]
            if pulled != values[e]:
                return False
    return True


def identity_homomorphism(g: Graph) -> GraphHomomorphism:
    return GraphHomomorphism(g, g, tuple(range(g.vertex_count)))


def compose(outer: GraphHomomorphism, inner: GraphHomomorphism) -> GraphHomomorphism:
    """outer ∘ inner"""
    if inner.target != outer.source:
        raise ValueError("合成できません: inner の行き先と outer の定義域が異なります")
    return GraphHomomorphism(
        inner.source, outer.target, tuple(outer(inner(v)) for v in range(inner.source.vertex_count))
    )


def inclusion_homomorphism(subgraph: Subgraph) -> GraphHomomorphism:
    """部分グラフを単独グラフとして取り出し、親への包含写像を返す"""
    standalone, order = subgraph.to_graph()
    return GraphHomomorphism(standalone, subgraph.parent, order)
