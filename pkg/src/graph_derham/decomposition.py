"""
サイクル・森分解 Γ = F(Γ) ∪ Cyc(Γ)

葉を同時に取り除く操作を繰り返して森の部分 F(Γ) と残りの核 Cyc(Γ) に
分け、レトラクト・最小性・自己同型の制限・核の解釈・分裂定理を検証する。
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from . import aut_action
from .aut_action import Permutation, PermutationGroup
from .graph_core import (
    Graph,
    Subgraph,
    betti_numbers,
    connected_components,
    induced_subgraph,
)
from .morphisms import GraphHomomorphism


@dataclass(frozen=True)
class Decomposition:
    """
    サイクル・森分解

    Attributes:
        graph: 元のグラフ
        forest: F(Γ)（取り除いた頂点に接する辺すべてとその端点）
        cycle_retract: Cyc(Γ)（残った頂点の誘導部分グラフ）
        intersection_vertices: F(Γ) ∩ Cyc(Γ) の頂点
        layers: 取り除いた葉の層 F₁, …, F_k
    """

    graph: Graph
    forest: Subgraph
    cycle_retract: Subgraph
    intersection_vertices: FrozenSet[int]
    layers: Tuple[FrozenSet[int], ...]


def cycle_forest(g: Graph) -> Decomposition:
    """
    葉の同時除去を繰り返してサイクル・森分解を求める

    残りのグラフで次数 1 の頂点をすべて同時に取り除く。葉がなくなった時点で
    孤立している頂点は木の成分の残りなので最終層として森に入れる。したがって
    木の成分は丸ごと F(Γ) に入り、Cyc(Γ) は空か最小次数 2 以上になる。
    森（b1 = 0）では F(Γ) = Γ, Cyc(Γ) = ∅ になる。

    Args:
        g: グラフ

    Returns:
        Decomposition
    """
    remaining = set(range(g.vertex_count))
    degree = {v: g.degree(v) for v in remaining}
    layers: List[FrozenSet[int]] = []
    while True:
        leaves = frozenset(v for v in remaining if degree[v] == 1)
        if not leaves:
            break
        for v in leaves:
            remaining.discard(v)
            for w in g.adjacency[v]:
                if w in remaining:
                    degree[w] -= 1
        layers.append(leaves)

    isolated = frozenset(v for v in remaining if degree[v] == 0)
    if isolated:
        remaining -= isolated
        layers.append(isolated)

    stripped = set().union(*layers) if layers else set()
    forest_edges = [e for e, (u, v) in enumerate(g.edges) if u in stripped or v in stripped]
    forest = Subgraph.from_edges(g, forest_edges, stripped)
    cycle_retract = induced_subgraph(g, remaining)
    return Decomposition(
        graph=g,
        forest=forest,
        cycle_retract=cycle_retract,
        intersection_vertices=forest.vertices & cycle_retract.vertices,
        layers=tuple(layers),
    )


def _subgraph_components(sub: Subgraph) -> List[Tuple[int, ...]]:
    # 部分グラフの連結成分（親の頂点番号で）
    standalone, order = sub.to_graph()
    return [tuple(order[i] for i in component) for component in connected_components(standalone)]


def _distances(sub: Subgraph, root: int) -> Dict[int, int]:
    standalone, order = sub.to_graph()
    lengths = nx.single_source_shortest_path_length(standalone.to_networkx(), order.index(root))
    return {order[i]: dist for i, dist in lengths.items()}


def retract_homomorphism(d: Decomposition) -> GraphHomomorphism:
    """
    レトラクション Γ → Cyc(Γ)

    Cyc(Γ) は固定し、F(Γ) の各成分は交差頂点 r からの距離の偶奇で
    r と、r の Cyc 内の最小の隣接頂点 w とに折り畳む。

    Args:
        d: サイクル・森分解

    Returns:
        行き先が単独グラフとしての Cyc(Γ) である準同型

    Raises:
        ValueError: Cyc(Γ) が空、または Cyc(Γ) に接しない木の成分がある場合
    """
    g = d.graph
    if d.cycle_retract.is_empty:
        raise ValueError("Cyc(Γ) が空なのでレトラクションは存在しません")
    cyc_graph, order = d.cycle_retract.to_graph()
    position = {v: i for i, v in enumerate(order)}
    images = {v: v for v in d.cycle_retract.vertices}

    for component in _subgraph_components(d.forest):
        roots = [v for v in component if v in d.intersection_vertices]
        if not roots:
            raise ValueError(f"木の成分 {component} は Cyc(Γ) に接していないためレトラクションは存在しません")
        if len(roots) > 1:
            raise RuntimeError(f"森の成分 {component} の交差頂点が 1 つではありません")
        root = roots[0]
        fold = min(w for w in g.adjacency[root] if g.edge_id(root, w) in d.cycle_retract.edges)
        for v, dist in _distances(d.forest, root).items():
            if v != root:
                images[v] = root if dist % 2 == 0 else fold

    return GraphHomomorphism(g, cyc_graph, tuple(position[images[v]] for v in range(g.vertex_count)))


@dataclass
class MinimalityCertificate:
    """Cyc(Γ) が H• を保つ最小の部分グラフであることの証明書"""

    holds: bool
    vacuous: bool
    graph_betti: Tuple[int, int]
    retract_betti: Optional[Tuple[int, int]]
    edge_removals: List[Tuple[Tuple[int, int], Tuple[int, int]]] = field(default_factory=list)
    failures: List[Tuple[int, int]] = field(default_factory=list)
    tree_components: int = 0


def verify_minimality(g: Graph) -> MinimalityCertificate:
    """
    (a) Cyc(Γ) と、Γ から木の成分を除いたものの Betti 数が等しい
    (b) Cyc(Γ) の辺を 1 本除くと Betti 数が変わる

    木の成分は丸ごと F(Γ) に入るので (a) では b0 からその個数を引いて比べる。
    森では Cyc(Γ) が空なので自明に成立とする。
    """
    graph_betti = betti_numbers(g)
    tree_components = sum(
        1 for component in connected_components(g)
        if len(induced_subgraph(g, component).edges) == len(component) - 1
    )
    d = cycle_forest(g)
    if d.cycle_retract.is_empty:
        return MinimalityCertificate(True, True, graph_betti, None, tree_components=tree_components)

    cyc_graph, _ = d.cycle_retract.to_graph()
    retract_betti = betti_numbers(cyc_graph)
    removals = []
    failures = []
    for e, edge in enumerate(cyc_graph.edges):
        reduced = Graph(cyc_graph.vertex_count, cyc_graph.edges[:e] + cyc_graph.edges[e + 1:])
        after = betti_numbers(reduced)
        removals.append((edge, after))
        if after == retract_betti:
            failures.append(edge)
    expected = (graph_betti[0] - tree_components, graph_betti[1])
    holds = retract_betti == expected and not failures
    return MinimalityCertificate(holds, False, graph_betti, retract_betti, removals, failures, tree_components)


@dataclass
class RestrictionCertificate:
    holds: bool
    group_order: int
    failures: List[Permutation] = field(default_factory=list)


def _maps_subgraph_onto_itself(g: Graph, p: Permutation, sub: Subgraph) -> bool:
    if {p(v) for v in sub.vertices} != set(sub.vertices):
        return False
    for e in sub.edges:
        u, v = g.edges[e]
        if g.edge_id(p(u), p(v)) not in sub.edges:
            return False
    return True


def aut_restriction_check(g: Graph, group: Optional[PermutationGroup] = None) -> RestrictionCertificate:
    """
    すべての自己同型が F(Γ) と Cyc(Γ) をそれぞれ自分自身に写し、交差頂点を置換することを確認
    """
    d = cycle_forest(g)
    group = group if group is not None else aut_action.automorphism_group(g)
    failures = []
    for p in group.elements:
        ok = (
            _maps_subgraph_onto_itself(g, p, d.forest)
            and _maps_subgraph_onto_itself(g, p, d.cycle_retract)
            and {p(v) for v in d.intersection_vertices} == set(d.intersection_vertices)
        )
        if not ok:
            failures.append(p)
    return RestrictionCertificate(not failures, group.order, failures)


@dataclass(frozen=True)
class ForestStabilizer:
    """
    単独グラフとしての F(Γ) の自己同型のうち交差頂点を各点固定するもの S と、
    Cyc(Γ) 上で恒等に延長する写像 η
    """

    graph: Graph
    forest_order: Tuple[int, ...]
    elements: Tuple[Permutation, ...]

    def extend(self, s: Permutation) -> Permutation:
        """η(s)"""
        images = list(range(self.graph.vertex_count))
        for i, v in enumerate(self.forest_order):
            images[v] = self.forest_order[s(i)]
        return Permutation(tuple(images))


def forest_stabilizer(d: Decomposition) -> ForestStabilizer:
    g = d.graph
    if d.forest.is_empty:
        return ForestStabilizer(g, (), (Permutation(()),))
    forest_graph, order = d.forest.to_graph()
    position = {v: i for i, v in enumerate(order)}
    elements = tuple(
        s for s in aut_action.automorphism_group(forest_graph).elements
        if all(s(position[v]) == position[v] for v in d.intersection_vertices)
    )
    return ForestStabilizer(g, order, elements)


@dataclass
class KernelInterpretationCertificate:
    """η: S → ker(φ¹) が群同型であることの証明書"""

    holds: bool
    s_order: int
    kernel_order: int
    lands_in_automorphisms: bool
    bijective: bool
    homomorphism: bool
    kernel: List[Permutation] = field(default_factory=list)


def kernel_interpretation(g: Graph, group: Optional[PermutationGroup] = None) -> KernelInterpretationCertificate:
    """
    S = {F(Γ) の自己同型で交差頂点を各点固定するもの} から ker(φ¹) への
    η（Cyc(Γ) 上は恒等で延長）が全単射準同型であることを検証

    Raises:
        ValueError: 連結でない、または b1 < 2 の場合
    """
    b0, b1 = betti_numbers(g)
    if b0 != 1 or b1 < 2:
        raise ValueError(f"連結かつ b1 >= 2 のグラフが必要です (b0={b0}, b1={b1})")
    d = cycle_forest(g)
    group = group if group is not None else aut_action.automorphism_group(g)
    kernel = aut_action.action_kernel(g, 1, group)

    stabilizer = forest_stabilizer(d)
    eta = {s: stabilizer.extend(s) for s in stabilizer.elements}
    members = set(group.elements)
    lands = all(image in members for image in eta.values())
    bijective = len(set(eta.values())) == len(eta) and set(eta.values()) == set(kernel)

    # 生成元との積で成り立てば語の長さの帰納法で全体で成り立つ
    s_group = PermutationGroup.from_elements(len(stabilizer.forest_order), stabilizer.elements)
    homomorphism = all(
        stabilizer.extend(s * t) == eta[s] * eta[t] for s in stabilizer.elements for t in s_group.generators
    )
    return KernelInterpretationCertificate(
        holds=lands and bijective and homomorphism,
        s_order=len(eta),
        kernel_order=len(kernel),
        lands_in_automorphisms=lands,
        bijective=bijective,
        homomorphism=homomorphism,
        kernel=list(kernel),
    )


@dataclass
class SplittingCertificate:
    """
    Aut(Γ) = ker(φ¹) × Y の内部直積の証明書

    仮定（連結・b1 >= 2・𝓗⁰(F(Γ)) 自明）を満たさないときは
    hypotheses_met = False で、満たさなかった仮定を failed_hypotheses に並べる。
    """

    hypotheses_met: bool
    failed_hypotheses: List[str] = field(default_factory=list)
    holds: bool = False
    automorphism_order: int = 0
    kernel_order: int = 0
    complement_order: int = 0
    induced_order: int = 0
    trivial_intersection: bool = False
    product_is_whole_group: bool = False
    commute: bool = False
    theta_bijective: bool = False
    theta_factorization: bool = False
    kernel_subgroup: List[Permutation] = field(default_factory=list)
    complement_subgroup: List[Permutation] = field(default_factory=list)


def splitting_hypotheses(g: Graph) -> List[str]:
    """満たさない分裂定理の仮定の一覧（空なら全て満たす）"""
    failed = []
    b0, b1 = betti_numbers(g)
    if b0 != 1:
        failed.append("not connected")
    if b1 < 2:
        failed.append("b1 < 2")
    d = cycle_forest(g)
    if not d.forest.is_empty:
        forest_graph, _ = d.forest.to_graph()
        if aut_action.induced_action(forest_graph, 0).order != 1:
            failed.append("H0(F) nontrivial")
    return failed


def splitting_verification(g: Graph, group: Optional[PermutationGroup] = None) -> SplittingCertificate:
    """
    分裂定理の検証

    K = ker(φ¹), Y = F(Γ) を各点固定する自己同型として K∩Y = {id}, KY = Aut(Γ),
    K と Y の元ごとの可換性、θ: 𝓗¹(Γ) → Y（φ(y) = M となる唯一の y）の全単射性と
    g·θ(φ(g))⁻¹ ∈ K を確認する。

    Args:
        g: グラフ
        group: 計算済みの自己同型群

    Returns:
        SplittingCertificate
    """
    failed = splitting_hypotheses(g)
    if failed:
        return SplittingCertificate(hypotheses_met=False, failed_hypotheses=failed)

    d = cycle_forest(g)
    group = group if group is not None else aut_action.automorphism_group(g)
    induced = aut_action.induced_action(g, 1, group)
    kernel = list(induced.kernel)
    forest_vertices = d.forest.vertices
    complement = [p for p in group.elements if all(p(v) == v for v in forest_vertices)]

    identity = group.identity
    kernel_set = set(kernel)
    trivial_intersection = kernel_set & set(complement) == {identity}
    products = {k * y for k in kernel for y in complement}
    product_is_whole_group = products == set(group.elements)
    commute = all(k * y == y * k for k in kernel for y in complement)

    theta: Dict = {}
    for y in complement:
        theta.setdefault(induced.matrix_of(y), []).append(y)
    theta_bijective = len(theta) == induced.order and all(len(ys) == 1 for ys in theta.values())
    theta_factorization = theta_bijective and all(
        p * theta[matrix][0].inverse() in kernel_set for p, matrix in induced.elements
    )

    holds = (
        trivial_intersection
        and product_is_whole_group
        and commute
        and theta_bijective
        and theta_factorization
        and group.order == len(kernel) * induced.order
    )
    return SplittingCertificate(
        hypotheses_met=True,
        holds=holds,
        automorphism_order=group.order,
        kernel_order=len(kernel),
        complement_order=len(complement),
        induced_order=induced.order,
        trivial_intersection=trivial_intersection,
        product_is_whole_group=product_is_whole_group,
        commute=commute,
        theta_bijective=theta_bijective,
        theta_factorization=theta_factorization,
        kernel_subgroup=kernel,
        complement_subgroup=complement,
    )
