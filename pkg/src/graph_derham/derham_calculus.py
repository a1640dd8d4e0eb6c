"""
離散積分とストークスの定理・ホッジ分解

部分グラフ G 上の積分は G に相対的な正味次数を使う。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .cochain import (
    EdgeForm,
    VertexForm,
    coboundary,
    harmonic_part,
    incidence_matrix,
    laplacians,
)
from .exact_linalg import (
    dot,
    image_basis,
    kernel_basis,
    solve,
    spans_equal,
    sub_vectors,
)
from .graph_core import (
    Graph,
    Orientation,
    Subgraph,
    subgraph_intersection,
    subgraph_union,
)


def _orientation(G: Subgraph, sigma: Optional[Orientation]) -> Orientation:
    if sigma is None:
        return G.parent.oriented
    if len(sigma.signs) != G.parent.edge_count:
        raise ValueError("向きの長さが親グラフの辺数と一致しません")
    return sigma


def net_degree(G: Subgraph, sigma: Optional[Orientation], v: int) -> int:
    """
    正味次数 n_G(v) = Σ σ(w, v)（G の辺のみ）

    v が G に含まれなければ 0。
    """
    if v not in G.vertices:
        return 0
    sigma = _orientation(G, sigma)
    parent = G.parent
    total = 0
    for e in parent.incident_edges[v]:
        if e in G.edges:
            a, b = parent.edges[e]
            w = b if a == v else a
            total += parent.sigma(w, v, sigma)
    return total


def net_degrees(G: Subgraph, sigma: Optional[Orientation] = None) -> Tuple[int, ...]:
    return tuple(net_degree(G, sigma, v) for v in range(G.parent.vertex_count))


def vertex_integral(G: Subgraph, sigma: Optional[Orientation], f: VertexForm) -> Fraction:
    """
    ∫⁺_G f = Σ_{v ∈ G} f(v)·n_G(v)

    Args:
        G: 部分グラフ
        sigma: 向き（None なら親グラフの向き）
        f: 親グラフ上の頂点形式

    Returns:
        厳密な有理数
    """
    if len(f.values) != G.parent.vertex_count:
        raise ValueError("頂点形式が親グラフに属していません")
    return sum(
        (f.values[v] * net_degree(G, sigma, v) for v in sorted(G.vertices)), Fraction(0)
    )


def edge_integral(G: Subgraph, sigma: Optional[Orientation], omega: EdgeForm) -> Fraction:
    """
    ∫⁻_G ω = Σ_{(v, w) ∈ G} ω(v, w)·σ(v, w)

    値の組 ω(v, w) に対して定義どおりに評価するので、形式の座標系と
    積分に使う向きが異なっていても正しい。
    """
    if len(omega.values) != G.parent.edge_count:
        raise ValueError("辺形式が親グラフに属していません")
    sigma = _orientation(G, sigma)
    parent = G.parent
    total = Fraction(0)
    for e in sorted(G.edges):
        u, v = parent.edges[e]
        total += omega.value(u, v) * parent.sigma(u, v, sigma)
    return total


@dataclass
class StokesCertificate:
    holds: bool
    vertex_side: Fraction
    edge_side: Fraction


def stokes_check(G: Subgraph, sigma: Optional[Orientation], f: VertexForm) -> StokesCertificate:
    """∫⁺_G f = ∫⁻_G Df を厳密に確認"""
    left = vertex_integral(G, sigma, f)
    right = edge_integral(G, sigma, coboundary(G.parent, f))
    return StokesCertificate(left == right, left, right)


Form = Union[VertexForm, EdgeForm]


def integral(G: Subgraph, sigma: Optional[Orientation], form: Form) -> Fraction:
    """形式の種類に応じて ∫⁺ か ∫⁻ を選ぶ"""
    if isinstance(form, VertexForm):
        return vertex_integral(G, sigma, form)
    return edge_integral(G, sigma, form)


@dataclass
class AdditivityCertificate:
    """
    ∫_{G1} + ∫_{G2} = ∫_{G1∪G2} + ∫_{G1∩G2} の確認結果

    values は (G1, G2, 和集合, 共通部分) の積分値。
    """

    holds: bool
    vertex_values: Tuple[Fraction, Fraction, Fraction, Fraction]
    edge_values: Tuple[Fraction, Fraction, Fraction, Fraction]


def integral_additivity_check(
    G1: Subgraph,
    G2: Subgraph,
    sigma: Optional[Orientation],
    f: VertexForm,
    omega: Optional[EdgeForm] = None,
) -> AdditivityCertificate:
    """
    頂点積分と辺積分の両方で包除の等式を確認

    Args:
        G1: 部分グラフ
        G2: 同じ親を持つ部分グラフ
        sigma: 向き
        f: 頂点形式
        omega: 辺形式（省略時は Df）

    Returns:
        AdditivityCertificate
    """
    union = subgraph_union(G1, G2)
    meet = subgraph_intersection(G1, G2)
    omega = omega if omega is not None else coboundary(G1.parent, f)
    pieces = (G1, G2, union, meet)
    vertex_values = tuple(vertex_integral(G, sigma, f) for G in pieces)
    edge_values = tuple(edge_integral(G, sigma, omega) for G in pieces)
    holds = (
        vertex_values[0] + vertex_values[1] == vertex_values[2] + vertex_values[3]
        and edge_values[0] + edge_values[1] == edge_values[2] + edge_values[3]
    )
    return AdditivityCertificate(holds, vertex_values, edge_values)


@dataclass
class ReversalCertificate:
    holds: bool
    integral: Fraction
    reversed_integral: Fraction
    stokes_after_reversal: bool


def orientation_reversal_check(G: Subgraph, sigma: Optional[Orientation], f: VertexForm) -> ReversalCertificate:
    """向きを反転すると頂点積分の符号が反転し、ストークスの等式は保たれる"""
    sigma = _orientation(G, sigma)
    flipped = sigma.reversed()
    forward = vertex_integral(G, sigma, f)
    backward = vertex_integral(G, flipped, f)
    stokes = stokes_check(G, flipped, f).holds
    return ReversalCertificate(backward == -forward and stokes, forward, backward, stokes)


@dataclass
class LinearityCertificate:
    holds: bool
    combined: Fraction
    expected: Fraction


def linearity_check(G: Subgraph, sigma: Optional[Orientation], c, f: Form, h: Form) -> LinearityCertificate:
    """∫(c·f + h) = c·∫f + ∫h"""
    if type(f) is not type(h):
        raise ValueError("同じ種類の形式を与えてください")
    c = Fraction(c)
    combined = integral(G, sigma, f.scale(c) + h)
    expected = c * integral(G, sigma, f) + integral(G, sigma, h)
    return LinearityCertificate(combined == expected, combined, expected)


@dataclass
class HodgeCertificate:
    """
    Ω⁰ = ker(Δ⁺) ⊕ Im(I), Ω¹ = ker(Δ⁻) ⊕ Im(D) の証明書

    次元は (核, 像) の組。
    """

    holds: bool
    vertex_dimensions: Tuple[int, int]
    edge_dimensions: Tuple[int, int]
    vertex_orthogonal: bool
    edge_orthogonal: bool
    vertex_kernels_equal: bool
    edge_kernels_equal: bool
    failures: List[str] = field(default_factory=list)


def _orthogonal(a, b) -> bool:
    return all(dot(x, y) == 0 for x in a for y in b)


def hodge_decomposition(g: Graph) -> HodgeCertificate:
    """
    ホッジ分解の検証

    次元の和が |V|・|E| になること、2 つの直和成分の厳密な直交性、
    ker(D) = ker(Δ⁺) と ker(D*) = ker(Δ⁻) の部分空間としての一致を確認する。
    """
    incidence = incidence_matrix(g)
    d = incidence.transpose()
    plus, minus = laplacians(g)

    harmonic_vertex = kernel_basis(plus)
    exact_vertex = image_basis(incidence)
    harmonic_edge = kernel_basis(minus)
    exact_edge = image_basis(d)

    vertex_dimensions = (len(harmonic_vertex), len(exact_vertex))
    edge_dimensions = (len(harmonic_edge), len(exact_edge))
    vertex_orthogonal = _orthogonal(harmonic_vertex, exact_vertex)
    edge_orthogonal = _orthogonal(harmonic_edge, exact_edge)
    vertex_kernels_equal = spans_equal(kernel_basis(d), harmonic_vertex, g.vertex_count)
    edge_kernels_equal = spans_equal(kernel_basis(incidence), harmonic_edge, g.edge_count)

    failures = []
    if sum(vertex_dimensions) != g.vertex_count:
        failures.append("vertex dimensions")
    if sum(edge_dimensions) != g.edge_count:
        failures.append("edge dimensions")
    if not vertex_orthogonal:
        failures.append("vertex orthogonality")
    if not edge_orthogonal:
        failures.append("edge orthogonality")
    if not vertex_kernels_equal:
        failures.append("ker(D) != ker(Δ⁺)")
    if not edge_kernels_equal:
        failures.append("ker(D*) != ker(Δ⁻)")

    return HodgeCertificate(
        holds=not failures,
        vertex_dimensions=vertex_dimensions,
        edge_dimensions=edge_dimensions,
        vertex_orthogonal=vertex_orthogonal,
        edge_orthogonal=edge_orthogonal,
        vertex_kernels_equal=vertex_kernels_equal,
        edge_kernels_equal=edge_kernels_equal,
        failures=failures,
    )


def split_edge_form(g: Graph, omega: EdgeForm) -> Tuple[EdgeForm, VertexForm]:
    """
    辺形式を調和成分と完全形式に分ける: ω = h + Df

    Returns:
        (調和成分 h, ポテンシャル f)

    Raises:
        RuntimeError: 残りが Im(D) に入らない場合
    """
    harmonic = harmonic_part(g, omega)
    exact = sub_vectors(omega.values, harmonic.values)
    potential = solve(incidence_matrix(g).transpose(), exact)
    if potential is None:
        raise RuntimeError("調和成分を除いた残りが Im(D) に入りません")
    return harmonic, VertexForm(g, potential)

