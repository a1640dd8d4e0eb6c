"""
自己同型群と H⁰・H¹ への誘導作用

自己同型は個別化と細分化による探索木で列挙し、φ(g) = (g*)⁻¹ を
調和代表元の基底での有理数行列として実現する。
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from .cochain import cohomology
from .exact_linalg import RationalMatrix
from .graph_core import (
    Graph,
    betti_numbers,
    component_labels,
    connected_components,
    induced_subgraph,
    is_connected,
    min_valency,
)
from .morphisms import GraphHomomorphism, induced_cohomology_map, pullback_forms_fixed

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class Permutation:
    """頂点の置換。images[i] は頂点 i の像"""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"置換ではありません: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(self · other)(v) = self(other(v))"""
        return Permutation(tuple(self.images[x] for x in other.images))

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        result = [0] * len(self.images)
        for v, image in enumerate(self.images):
            result[image] = v
        return Permutation(tuple(result))

    def is_identity(self) -> bool:
        return all(v == image for v, image in enumerate(self.images))

    def as_homomorphism(self, g: Graph) -> GraphHomomorphism:
        return GraphHomomorphism(g, g, self.images)


def _element_order(x: T, multiply: Callable[[T, T], T], identity: T) -> int:
    order, power = 1, x
    while power != identity:
        power = multiply(power, x)
        order += 1
    return order


def _closure(generators: Sequence[T], multiply: Callable[[T, T], T], identity: T) -> set:
    # 有限群なので生成元の右乗算だけで閉包になる
    elements = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s in generators:
                y = multiply(x, s)
                if y not in elements:
                    elements.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return elements


def _greedy_generators(elements: Sequence[T], multiply: Callable[[T, T], T], identity: T) -> List[T]:
    """整列済みの元を順に見て、まだ生成されていない元だけを生成元に加える"""
    generators: List[T] = []
    generated = {identity}
    for x in elements:
        if x in generated:
            continue
        generators.append(x)
        generated = _closure(generators, multiply, identity)
        if len(generated) == len(elements):
            break
    return generators


@dataclass(frozen=True)
class PermutationGroup:
    """
    全元を列挙した置換群

    Attributes:
        degree: 頂点数
        elements: 辞書式順に整列した全元
        generators: 貪欲に選んだ生成元
    """

    degree: int
    elements: Tuple[Permutation, ...]
    generators: Tuple[Permutation, ...] = field(default=())

    @classmethod
    def from_elements(cls, degree: int, elements: Sequence[Permutation]) -> "PermutationGroup":
        ordered = tuple(sorted(set(elements)))
        identity = Permutation.identity(degree)
        return cls(degree, ordered, tuple(_greedy_generators(ordered, Permutation.__mul__, identity)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p in set(self.elements)

    def is_closed(self) -> bool:
        members = set(self.elements)
        return self.identity in members and all(
            x * y in members and x.inverse() in members for x in self.elements for y in self.generators
        )


def _refine(g: Graph, cells: List[List[int]]) -> Tuple[List[List[int]], tuple]:
    """
    隣接頂点の所属セルの個数で順序付き分割を安定するまで細分化

    新しいセルの順序は (元のセル番号, シグネチャ) で決まるので、頂点番号に
    依存しない。trace は分割の経過を記録した比較可能な値。
    """
    trace = []
    adjacency = g.adjacency
    while True:
        index = {}
        for i, cell in enumerate(cells):
            for v in cell:
                index[v] = i
        refined: List[List[int]] = []
        for i, cell in enumerate(cells):
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {
                v: tuple(sorted(Counter(index[w] for w in adjacency[v]).items())) for v in cell
            }
            groups = sorted(set(signature.values()))
            if len(groups) == 1:
                refined.append(cell)
                continue
            for s in groups:
                part = [v for v in cell if signature[v] == s]
                refined.append(part)
                trace.append((i, s, len(part)))
        if len(refined) == len(cells):
            trace.append((-1, (), len(refined)))
            return refined, tuple(trace)
        cells = refined


def _search_leaves(g: Graph) -> List[Tuple[int, ...]]:
    """
    個別化・細分化の探索木の葉（頂点の並び）を列挙

    各節点では最小の非単元セルを対象にし、子のうち trace が最小のものだけを
    たどる。この枝刈りは同型で不変なので、葉の集合も同型で不変になる。
    """
    if g.vertex_count == 0:
        return [()]
    leaves: List[Tuple[int, ...]] = []

    def descend(cells: List[List[int]]) -> None:
        candidates = [i for i, cell in enumerate(cells) if len(cell) > 1]
        if not candidates:
            leaves.append(tuple(cell[0] for cell in cells))
            return
        target = min(candidates, key=lambda i: (len(cells[i]), i))
        children = []
        for v in sorted(cells[target]):
            split = cells[:target] + [[v], [w for w in cells[target] if w != v]] + cells[target + 1:]
            refined, trace = _refine(g, split)
            children.append((trace, refined))
        best = min(trace for trace, _ in children)
        for trace, refined in children:
            if trace == best:
                descend(refined)

    initial, _ = _refine(g, [list(range(g.vertex_count))])
    descend(initial)
    return leaves


def _relabelled_edges(g: Graph, order: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    position = {v: i for i, v in enumerate(order)}
    return tuple(sorted(
        (min(position[u], position[v]), max(position[u], position[v])) for u, v in g.edges
    ))


def canonical_form(g: Graph) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """
    同型不変な正準形 (頂点数, 付け替え後の辺リスト)

    向きは無視する。2 つのグラフが同型であることと正準形が等しいことは同値。
    """
    return g.vertex_count, min(_relabelled_edges(g, leaf) for leaf in _search_leaves(g))


def automorphism_group(g: Graph) -> PermutationGroup:
    """
    自己同型群を全列挙

    探索木の最初の葉と同じ付け替えグラフを与える葉それぞれが、ちょうど 1 つの
    自己同型に対応する。

    Args:
        g: グラフ（頂点数 1 以上）

    Returns:
        辞書式順に整列した PermutationGroup
    """
    if g.vertex_count < 1:
        raise ValueError("自己同型群の計算には頂点が 1 つ以上必要です")
    leaves = _search_leaves(g)
    reference = leaves[0]
    reference_edges = _relabelled_edges(g, reference)
    elements = []
    for leaf in leaves:
        if _relabelled_edges(g, leaf) != reference_edges:
            continue
        images = [0] * g.vertex_count
        for source, image in zip(reference, leaf):
            images[source] = image
        elements.append(Permutation(tuple(images)))
    return PermutationGroup.from_elements(g.vertex_count, elements)


def is_automorphism(g: Graph, p: Permutation) -> bool:
    return len(p) == g.vertex_count and all(g.has_edge(p(u), p(v)) for u, v in g.edges)


@dataclass(frozen=True)
class InducedActionGroup:
    """
    φᵖ(Aut Γ) を行列群として保持

    Attributes:
        degree: 0 または 1
        elements: (自己同型, φ(g)) の組
        kernel: φ(g) が単位行列になる自己同型
    """

    graph: Graph
    degree: int
    elements: Tuple[Tuple[Permutation, RationalMatrix], ...]
    kernel: Tuple[Permutation, ...]

    @property
    def matrices(self) -> Tuple[RationalMatrix, ...]:
        """重複を除いた行列（最初に現れた順）"""
        seen = {}
        for _, matrix in self.elements:
            seen.setdefault(matrix, None)
        return tuple(seen)

    @property
    def order(self) -> int:
        return len(self.matrices)

    @property
    def dimension(self) -> int:
        return cohomology(self.graph, self.degree).dimension

    def matrix_of(self, p: Permutation) -> RationalMatrix:
        for q, matrix in self.elements:
            if q == p:
                return matrix
        raise ValueError(f"{p.images} はこの群の元ではありません")


def phi_matrix(g: Graph, p: Permutation, degree: int) -> RationalMatrix:
    """φ(g) = (g⁻¹)* = (g*)⁻¹ の行列"""
    return induced_cohomology_map(p.inverse().as_homomorphism(g), degree)


def induced_action(g: Graph, degree: int, group: Optional[PermutationGroup] = None) -> InducedActionGroup:
    """
    誘導作用 φᵖ を全自己同型について計算

    Args:
        g: 向き付きグラフ
        degree: 0 または 1
        group: 計算済みの自己同型群（省略時は計算する）

    Returns:
        InducedActionGroup
    """
    group = group if group is not None else automorphism_group(g)
    identity = RationalMatrix.identity(cohomology(g, degree).dimension)
    elements = []
    kernel = []
    for p in group.elements:
        matrix = phi_matrix(g, p, degree)
        elements.append((p, matrix))
        if matrix == identity:
            kernel.append(p)
    return InducedActionGroup(g, degree, tuple(elements), tuple(kernel))


def action_kernel(g: Graph, degree: int, group: Optional[PermutationGroup] = None) -> Tuple[Permutation, ...]:
    """
    ker(φᵖ) を行列を作らずに計算

    g が核に入ることと、g* が全ての調和基底形式を固定することは同値。
    """
    group = group if group is not None else automorphism_group(g)
    space = cohomology(g, degree)
    return tuple(p for p in group.elements if pullback_forms_fixed(g, p.images, space))


@dataclass
class H0KernelReport:
    """ker(φ⁰) と成分を保つ自己同型の比較結果"""

    agree: bool
    group_order: int
    kernel_order: int
    induced_order: int
    component_preserving_order: int
    mismatches: List[Permutation] = field(default_factory=list)


def kernel_characterization_h0(g: Graph, group: Optional[PermutationGroup] = None) -> H0KernelReport:
    """
    g ∈ ker(φ⁰) と「g が各頂点を自分の成分に写す」の一致を確認

    Args:
        g: グラフ
        group: 計算済みの自己同型群

    Returns:
        H0KernelReport
    """
    group = group if group is not None else automorphism_group(g)
    action = induced_action(g, 0, group)
    labels = component_labels(g)
    kernel = set(action.kernel)
    mismatches = []
    preserving = 0
    for p in group.elements:
        keeps_components = all(labels[p(v)] == labels[v] for v in range(g.vertex_count))
        preserving += keeps_components
        if keeps_components != (p in kernel):
            mismatches.append(p)
    return H0KernelReport(
        agree=not mismatches,
        group_order=group.order,
        kernel_order=len(kernel),
        induced_order=action.order,
        component_preserving_order=preserving,
        mismatches=mismatches,
    )


def rotates_cycle(p: Permutation, cycle: Sequence[int]) -> bool:
    """
    p が巡回順序 cycle を向きを保ったまま回転させるか

    ある n について p(c_i) = c_{i+n mod k} がすべての i で成り立つこと。
    """
    k = len(cycle)
    if k == 0:
        return True
    position = {v: i for i, v in enumerate(cycle)}
    first = p(cycle[0])
    if first not in position:
        return False
    shift = position[first]
    return all(p(cycle[i]) == cycle[(i + shift) % k] for i in range(k))


@dataclass
class H1KernelReport:
    """ker(φ¹) と基底サイクル上の回転条件の比較結果"""

    agree: bool
    group_order: int
    kernel_order: int
    rotation_order: int
    mismatches: List[Permutation] = field(default_factory=list)


def kernel_characterization_h1(g: Graph, group: Optional[PermutationGroup] = None) -> H1KernelReport:
    """
    g ∈ ker(φ¹)（行列判定）と「各基底サイクルの台を回転で自分自身に写す」の一致を確認

    Raises:
        ValueError: b1 = 0 の場合
    """
    if betti_numbers(g)[1] < 1:
        raise ValueError("b1 >= 1 のグラフが必要です")
    group = group if group is not None else automorphism_group(g)
    action = induced_action(g, 1, group)
    kernel = set(action.kernel)
    cycles = cohomology(g, 1).cycles
    mismatches = []
    rotations = 0
    for p in group.elements:
        rotates = all(rotates_cycle(p, cycle) for cycle in cycles)
        rotations += rotates
        if rotates != (p in kernel):
            mismatches.append(p)
    return H1KernelReport(
        agree=not mismatches,
        group_order=group.order,
        kernel_order=len(kernel),
        rotation_order=rotations,
        mismatches=mismatches,
    )


@dataclass
class B1OneClassification:
    induced_group: str
    condition: str
    induced_order: int


def _antipodal_on_even_cycle(cyc_graph: Graph, a: int, b: int) -> bool:
    n = cyc_graph.vertex_count
    if n % 2 or any(cyc_graph.degree(v) != 2 for v in range(n)):
        return False
    # 円周上の距離を幅優先で測る
    distance = {a: 0}
    frontier = [a]
    while frontier:
        next_frontier = []
        for v in frontier:
            for w in cyc_graph.adjacency[v]:
                if w not in distance:
                    distance[w] = distance[v] + 1
                    next_frontier.append(w)
        frontier = next_frontier
    return distance.get(b) == n // 2


def classify_b1_one(g: Graph) -> B1OneClassification:
    """
    b1 = 1 の連結グラフの 𝓗¹ を判定し、満たす十分条件を報告

    条件 1: F が空、条件 2: F が連結、条件 3: F が 2 成分で交差頂点が
    偶数長サイクル上の対蹠点。どれにも当たらなければ "none"。

    Raises:
        ValueError: 連結でない、または b1 != 1 の場合
    """
    from .decomposition import cycle_forest

    b0, b1 = betti_numbers(g)
    if b0 != 1 or b1 != 1:
        raise ValueError(f"連結かつ b1 = 1 のグラフが必要です (b0={b0}, b1={b1})")

    order = induced_action(g, 1).order
    decomposition = cycle_forest(g)
    forest_graph, _ = decomposition.forest.to_graph()
    forest_components = len(connected_components(forest_graph))
    condition = "none"
    if decomposition.forest.is_empty:
        condition = "1"
    elif forest_components == 1:
        condition = "2"
    elif forest_components == 2 and len(decomposition.intersection_vertices) == 2:
        cyc_graph, order_map = decomposition.cycle_retract.to_graph()
        position = {v: i for i, v in enumerate(order_map)}
        a, b = sorted(decomposition.intersection_vertices)
        if _antipodal_on_even_cycle(cyc_graph, position[a], position[b]):
            condition = "3"
    return B1OneClassification("Z/2" if order == 2 else "trivial", condition, order)


@dataclass
class GroupProfile:
    """群の概要（同型類の名前付けはしない）"""

    order: int
    abelian: bool
    cyclic: bool
    element_orders: Dict[int, int]
    generators: List


def _profile(elements: Sequence[T], generators: Sequence[T], multiply, identity: T, describe) -> GroupProfile:
    orders = Counter(_element_order(x, multiply, identity) for x in elements)
    abelian = all(multiply(a, b) == multiply(b, a) for a in generators for b in generators)
    return GroupProfile(
        order=len(elements),
        abelian=abelian,
        cyclic=len(elements) in orders,
        element_orders=dict(sorted(orders.items())),
        generators=[describe(x) for x in generators],
    )


def group_profile(grp) -> GroupProfile:
    """
    PermutationGroup または InducedActionGroup の概要

    Args:
        grp: 群

    Returns:
        GroupProfile（位数・可換性・巡回性・元の位数の分布・生成元）
    """
    if isinstance(grp, PermutationGroup):
        return _profile(
            grp.elements, grp.generators, Permutation.__mul__, grp.identity, lambda p: list(p.images)
        )
    matrices = grp.matrices
    identity = RationalMatrix.identity(grp.dimension)
    multiply = RationalMatrix.__matmul__
    generators = _greedy_generators(sorted(matrices, key=lambda m: m.entries), multiply, identity)
    return _profile(matrices, generators, multiply, identity, lambda m: m)


@dataclass
class IsomorphicComponentsReport:
    holds: bool
    induced_order: int
    has_isomorphic_components: bool


def isomorphic_components_check(g: Graph, group: Optional[PermutationGroup] = None) -> IsomorphicComponentsReport:
    """𝓗⁰(Γ) が非自明であることと、同型な成分が 2 つ以上あることの一致"""
    induced_order = induced_action(g, 0, group).order
    forms = [
        canonical_form(induced_subgraph(g, component).to_graph()[0])
        for component in connected_components(g)
    ]
    duplicated = len(set(forms)) < len(forms)
    return IsomorphicComponentsReport(
        holds=(induced_order > 1) == duplicated,
        induced_order=induced_order,
        has_isomorphic_components=duplicated,
    )


@dataclass
class KernelRestrictionReport:
    holds: bool
    kernel_order: int
    pointwise_required: bool
    failures: List[Permutation] = field(default_factory=list)


def kernel_restriction_check(g: Graph, group: Optional[PermutationGroup] = None) -> KernelRestrictionReport:
    """
    ker(φ¹_Γ) の各元が Cyc(Γ) の自己同型に制限され、ker(φ¹_Cyc) に入ることを確認

    Γ が連結かつ b1 >= 2 のときは Cyc(Γ) を各点ごとに固定することも確認する。
    """
    from .decomposition import cycle_forest

    group = group if group is not None else automorphism_group(g)
    kernel = action_kernel(g, 1, group)
    cycle_retract = cycle_forest(g).cycle_retract
    b0, b1 = betti_numbers(g)
    pointwise = b0 == 1 and b1 >= 2
    failures = []
    if not cycle_retract.is_empty:
        cyc_graph, order = cycle_retract.to_graph()
        position = {v: i for i, v in enumerate(order)}
        cyc_space = cohomology(cyc_graph, 1)
        for p in kernel:
            if any(p(v) not in position for v in order):
                failures.append(p)
                continue
            restricted = tuple(position[p(v)] for v in order)
            if not is_automorphism(cyc_graph, Permutation(restricted)):
                failures.append(p)
            elif not pullback_forms_fixed(cyc_graph, restricted, cyc_space):
                failures.append(p)
            elif pointwise and any(p(v) != v for v in order):
                failures.append(p)
    return KernelRestrictionReport(not failures, len(kernel), pointwise, failures)


def is_trivial_kernel_case(g: Graph) -> bool:
    """連結・最小次数 2 以上・b1 >= 2"""
    return (
        g.vertex_count > 0
        and is_connected(g)
        and min_valency(g) >= 2
        and betti_numbers(g)[1] >= 2
    )
