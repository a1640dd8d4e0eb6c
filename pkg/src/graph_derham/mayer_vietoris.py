"""
被覆 Γ = A ∪ B に対するマイヤー・ヴィートリス完全系列

0 → H⁰(Γ) → H⁰(A)⊕H⁰(B) → H⁰(A∩B) →δ H¹(Γ) → H¹(A)⊕H¹(B) → H¹(A∩B) → 0
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .cochain import cohomology, coboundary, harmonic_part
from .exact_linalg import (
    RationalMatrix,
    image_basis,
    kernel_basis,
    rank,
    spans_equal,
    stack_columns,
    stack_rows,
)
from .graph_core import (
    Graph,
    Subgraph,
    component_labels,
    full_subgraph,
    subgraph_intersection,
    subgraph_union,
)
from .morphisms import GraphHomomorphism, induced_cohomology_map, pullback_matrix

LIFTS = ("zero", "component_constant")


def validate_cover(g: Graph, a: Subgraph, b: Subgraph) -> None:
    """A ∪ B = Γ（頂点と辺）でなければ ValueError"""
    if a.parent != g or b.parent != g:
        raise ValueError("被覆の部分グラフは Γ の部分グラフでなければなりません")
    if subgraph_union(a, b) != full_subgraph(g):
        raise ValueError("A ∪ B が Γ 全体になっていません")


def _inclusion(small: Subgraph, big: Subgraph) -> GraphHomomorphism:
    # 単独グラフどうしの包含写像
    small_graph, small_order = small.to_graph()
    big_graph, big_order = big.to_graph()
    position = {v: i for i, v in enumerate(big_order)}
    return GraphHomomorphism(small_graph, big_graph, tuple(position[v] for v in small_order))


def _negate(m: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.zeros(m.rows, m.cols) - m


@dataclass
class ShortSequenceCertificate:
    """0 → Ωᵖ(Γ) → Ωᵖ(A)⊕Ωᵖ(B) → Ωᵖ(A∩B) → 0 の完全性（添字は p = 0, 1）"""

    holds: bool
    injective: Tuple[bool, bool]
    middle_exact: Tuple[bool, bool]
    surjective: Tuple[bool, bool]
    zero_extension_witness: Tuple[bool, bool]


def short_sequence_check(g: Graph, a: Subgraph, b: Subgraph) -> ShortSequenceCertificate:
    """
    形式の空間での短完全系列を p = 0, 1 で確認

    i*−j* の全射性は、(f を A に 0 で延長したもの, 0) が f に写ることでも確かめる。

    Raises:
        ValueError: 被覆になっていない場合
    """
    validate_cover(g, a, b)
    whole = full_subgraph(g)
    meet = subgraph_intersection(a, b)
    k, l = _inclusion(a, whole), _inclusion(b, whole)
    i, j = _inclusion(meet, a), _inclusion(meet, b)

    injective, middle, surjective, witness = [], [], [], []
    for degree in (0, 1):
        restrict = stack_rows(pullback_matrix(k, degree), pullback_matrix(l, degree))
        difference = stack_columns(pullback_matrix(i, degree), _negate(pullback_matrix(j, degree)))
        injective.append(rank(restrict) == restrict.cols)
        middle.append(spans_equal(kernel_basis(difference), image_basis(restrict), restrict.rows))
        surjective.append(rank(difference) == difference.rows)

        ok = True
        for x in range(difference.rows):
            extended = [Fraction(0)] * difference.cols
            if degree == 0:
                extended[i(x)] = Fraction(1)
            else:
                u, v = i.source.edges[x]
                extended[i.target.edge_id(i(u), i(v))] = Fraction(1)
            image = difference.apply(extended)
            ok = ok and all(value == (1 if y == x else 0) for y, value in enumerate(image))
        witness.append(ok)

    holds = all(injective) and all(middle) and all(surjective) and all(witness)
    return ShortSequenceCertificate(
        holds, tuple(injective), tuple(middle), tuple(surjective), tuple(witness)
    )


def _lift(meet: Subgraph, a: Subgraph, values: Tuple[Fraction, ...], lift: str) -> List[Fraction]:
    """
    A∩B 上の頂点形式を A 上の頂点形式に持ち上げる（B 側は 0）

    zero は A∩B の外で 0、component_constant は A∩B の外の頂点に、
    台と交わる A の成分ごとに値 1 を置く。
    """
    i = _inclusion(meet, a)
    lifted = [Fraction(0)] * i.target.vertex_count
    for x, value in enumerate(values):
        lifted[i(x)] = value
    if lift == "component_constant":
        labels = component_labels(i.target)
        touched = {labels[i(x)] for x, value in enumerate(values) if value}
        inside = set(i.vertex_map)
        for v in range(i.target.vertex_count):
            if v not in inside and labels[v] in touched:
                lifted[v] = Fraction(1)
    elif lift != "zero":
        raise ValueError(f"未知の持ち上げ方です: {lift}（{', '.join(LIFTS)} から選んでください）")
    return lifted


def connecting_map(g: Graph, a: Subgraph, b: Subgraph, lift: str = "zero") -> RationalMatrix:
    """
    連結準同型 δ: H⁰(A∩B) → H¹(Γ)

    H⁰(A∩B) の基底の類 [f] を (f_A, 0) に持ち上げ、A の辺では Df_A、B だけの辺では 0 と
    して Γ 上の辺形式 η に貼り合わせる。δ[f] は η の調和成分の座標。

    Args:
        g: グラフ
        a: 被覆の A
        b: 被覆の B
        lift: "zero" または "component_constant"

    Returns:
        dim H¹(Γ) × dim H⁰(A∩B) の行列

    Raises:
        ValueError: 被覆になっていない、または lift が不明な場合
        RuntimeError: A∩B の辺で貼り合わせが一致しない場合
    """
    validate_cover(g, a, b)
    meet = subgraph_intersection(a, b)
    meet_graph, _ = meet.to_graph()
    a_graph, a_order = a.to_graph()
    a_edge_position = {
        g.edge_id(a_order[u], a_order[v]): index for index, (u, v) in enumerate(a_graph.edges)
    }
    target_space = cohomology(g, 1)

    columns = []
    for form in cohomology(meet_graph, 0).basis:
        lifted = _lift(meet, a, form.values, lift)
        d_lifted = coboundary(a_graph, lifted).values
        glued = [Fraction(0)] * g.edge_count
        for e in range(g.edge_count):
            if e in a_edge_position:
                glued[e] = d_lifted[a_edge_position[e]]
        for e in meet.edges:
            if glued[e] != 0:
                raise RuntimeError(f"A∩B の辺 {g.edges[e]} で Df_A と Df_B が一致しません")
        columns.append(target_space.coordinates(harmonic_part(g, glued)))
    return RationalMatrix.from_columns(columns, target_space.dimension)


@dataclass
class MVSequence:
    """
    長完全系列の 5 つの写像（固定したコホモロジー基底での行列）

    dimensions は H⁰(Γ), H⁰(A)⊕H⁰(B), H⁰(A∩B), H¹(Γ), H¹(A)⊕H¹(B), H¹(A∩B) の次元。
    """

    a: Subgraph
    b: Subgraph
    dimensions: Tuple[int, ...]
    restrict0: RationalMatrix
    difference0: RationalMatrix
    delta: RationalMatrix
    restrict1: RationalMatrix
    difference1: RationalMatrix

    @property
    def maps(self) -> Tuple[RationalMatrix, ...]:
        return (self.restrict0, self.difference0, self.delta, self.restrict1, self.difference1)


def build_sequence(g: Graph, a: Subgraph, b: Subgraph, lift: str = "zero") -> MVSequence:
    """被覆から長完全系列の写像を組み立てる"""
    validate_cover(g, a, b)
    whole = full_subgraph(g)
    meet = subgraph_intersection(a, b)
    k, l = _inclusion(a, whole), _inclusion(b, whole)
    i, j = _inclusion(meet, a), _inclusion(meet, b)

    restrict, difference = [], []
    for degree in (0, 1):
        restrict.append(stack_rows(induced_cohomology_map(k, degree), induced_cohomology_map(l, degree)))
        difference.append(stack_columns(
            induced_cohomology_map(i, degree), _negate(induced_cohomology_map(j, degree))
        ))
    delta = connecting_map(g, a, b, lift)
    dimensions = (
        restrict[0].cols,
        restrict[0].rows,
        difference[0].rows,
        restrict[1].cols,
        restrict[1].rows,
        difference[1].rows,
    )
    return MVSequence(a, b, dimensions, restrict[0], difference[0], delta, restrict[1], difference[1])


@dataclass
class LongSequenceCertificate:
    """
    長完全系列の検証結果

    exact_at は 6 つの節点それぞれで im = ker が成り立つか、chain_condition は
    隣り合う写像の合成が 0 になるか。
    """

    holds: bool
    dimensions: Tuple[int, ...]
    alternating_sum: int
    exact_at: List[bool] = field(default_factory=list)
    chain_condition: List[bool] = field(default_factory=list)
    delta_rank: int = 0


def long_sequence_check(g: Graph, a: Subgraph, b: Subgraph, lift: str = "zero") -> LongSequenceCertificate:
    """
    6 つの節点すべてで完全性を確認し、次元の交代和が 0 であることも確認

    Args:
        g: グラフ
        a: 被覆の A
        b: 被覆の B
        lift: δ の持ち上げ方

    Returns:
        LongSequenceCertificate
    """
    sequence = build_sequence(g, a, b, lift)
    dims = sequence.dimensions
    maps = (RationalMatrix.zeros(dims[0], 0),) + sequence.maps + (RationalMatrix.zeros(0, dims[-1]),)

    exact_at = []
    for node, dim in enumerate(dims):
        incoming, outgoing = maps[node], maps[node + 1]
        exact_at.append(spans_equal(kernel_basis(outgoing), image_basis(incoming), dim))

    chain = [(second @ first).is_zero() for first, second in zip(sequence.maps, sequence.maps[1:])]
    alternating = sum(dim if index % 2 == 0 else -dim for index, dim in enumerate(dims))
    return LongSequenceCertificate(
        holds=all(exact_at) and all(chain) and alternating == 0,
        dimensions=dims,
        alternating_sum=alternating,
        exact_at=exact_at,
        chain_condition=chain,
        delta_rank=rank(sequence.delta),
    )


def lift_independence_check(g: Graph, a: Subgraph, b: Subgraph) -> bool:
    """δ が持ち上げ方によらないこと"""
    return connecting_map(g, a, b, "zero") == connecting_map(g, a, b, "component_constant")
