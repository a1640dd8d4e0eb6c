"""
グラフの生成

名前付きグラフ、同型を除いた連結グラフの全列挙、ランダムな検証用データ。
"""
import random
import sys
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from .aut_action import automorphism_group, canonical_form
from .cochain import EdgeForm, VertexForm
from .graph_core import Graph, Subgraph, betti_numbers, build_graph, disjoint_union, relabel_graph
from .morphisms import GraphHomomorphism


def cycle_graph(n: int) -> Graph:
    """C_n（頂点 0..n-1 をこの順に巡る）"""
    if n < 3:
        raise ValueError(f"サイクルには 3 頂点以上が必要です: {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    """n 頂点のパス 0-1-...-(n-1)"""
    if n < 1:
        raise ValueError(f"パスには 1 頂点以上が必要です: {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    """中心 0 と葉 1..leaves"""
    return build_graph(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def lollipop_graph(cycle_length: int = 3, tail_length: int = 2) -> Graph:
    """
    サイクル 0..m-1 の頂点 m-1 からパスを伸ばしたグラフ

    既定値は三角形 0-1-2 とパス 2-3-4。
    """
    m = cycle_length
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(v - 1, v) for v in range(m, m + tail_length)]
    return build_graph(m + tail_length, edges)


def theta_graph(a: int = 1, b: int = 1, c: int = 1) -> Graph:
    """
    頂点 0 と 1 を内部頂点数 a, b, c の 3 本のパスで結んだグラフ

    Raises:
        ValueError: 内部頂点数 0 のパスが 2 本以上ある場合（多重辺になる）
    """
    lengths = (a, b, c)
    if min(lengths) < 0 or sum(1 for k in lengths if k == 0) > 1:
        raise ValueError(f"シータグラフのパスの長さが不正です: {lengths}")
    edges = []
    next_vertex = 2
    for k in lengths:
        previous = 0
        for _ in range(k):
            edges.append((previous, next_vertex))
            previous = next_vertex
            next_vertex += 1
        edges.append((previous, 1))
    return build_graph(next_vertex, edges)


_ENUMERATED: Dict[int, Tuple[Graph, ...]] = {1: (Graph(1, ()),)}


def _augment(parents: Sequence[Graph], n: int, verbose: bool) -> Tuple[Graph, ...]:
    found = {}
    for parent in tqdm(parents, desc=f"{n} 頂点", file=sys.stderr, disable=not verbose):
        group = automorphism_group(parent)
        for mask in range(1, 2 ** (n - 1)):
            neighbours = tuple(v for v in range(n - 1) if mask >> v & 1)
            # 親の自己同型で移り合う隣接集合は同型なグラフを与えるので、軌道の最小元だけ残す
            if any(tuple(sorted(p(v) for v in neighbours)) < neighbours for p in group.elements):
                continue
            candidate = Graph(n, tuple(sorted(parent.edges + tuple((v, n - 1) for v in neighbours))))
            key = canonical_form(candidate)
            if key not in found:
                found[key] = Graph(n, key[1])
    return tuple(found[key] for key in sorted(found, key=lambda k: (len(k[1]), k[1])))


def connected_graphs(n: int, verbose: bool = False) -> List[Graph]:
    """
    n 頂点の連結グラフを同型を除いて全列挙

    連結グラフは必ず切断点でない頂点を持つので、n-1 頂点の連結グラフに頂点を 1 つ
    足して得られる。重複は正準形で除き、正準形の代表を (辺数, 辺リスト) 順に返す。

    Args:
        n: 頂点数（1 以上）
        verbose: 進捗バーを stderr に出すか

    Returns:
        グラフのリスト（n = 1..8 で 1, 1, 2, 6, 21, 112, 853, 11117 個）
    """
    if n < 1:
        raise ValueError(f"頂点数は 1 以上で指定してください: {n}")
    for k in range(2, n + 1):
        if k not in _ENUMERATED:
            _ENUMERATED[k] = _augment(_ENUMERATED[k - 1], k, verbose)
    return list(_ENUMERATED[n])


def _random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_graph(
    rng: random.Random,
    max_vertices: int = 30,
    max_edges: int = 60,
    min_vertices: int = 1,
) -> Graph:
    """頂点数と辺数を一様に選び、networkx の G(n, m) モデルでグラフを作る"""
    n = rng.randint(min_vertices, max_vertices)
    m = rng.randint(0, min(max_edges, n * (n - 1) // 2))
    sample = nx.gnm_random_graph(n, m, seed=rng.randrange(2 ** 32))
    return build_graph(n, sample.edges())


def random_orientation(g: Graph, rng: random.Random) -> Graph:
    return g.with_orientation([rng.choice((1, -1)) for _ in range(g.edge_count)])


def random_vertex_form(g: Graph, rng: random.Random, bound: int = 5) -> VertexForm:
    return VertexForm(g, tuple(_random_rational(rng, bound) for _ in range(g.vertex_count)))


def random_edge_form(g: Graph, rng: random.Random, bound: int = 5) -> EdgeForm:
    return EdgeForm(g, tuple(_random_rational(rng, bound) for _ in range(g.edge_count)))


def random_subgraph(g: Graph, rng: random.Random) -> Subgraph:
    """頂点を確率 1/2 で選び、両端点が選ばれた辺を確率 1/2 で含める"""
    vertices = frozenset(v for v in range(g.vertex_count) if rng.random() < 0.5)
    edges = frozenset(
        e for e, (u, v) in enumerate(g.edges)
        if u in vertices and v in vertices and rng.random() < 0.5
    )
    return Subgraph(g, vertices, edges)


def random_cover(g: Graph, rng: random.Random) -> Tuple[Subgraph, Subgraph]:
    """
    A ∪ B = Γ となる部分グラフの組

    各辺を A のみ・B のみ・両方のいずれかに入れ、辺のない頂点もどちらか（または両方）に置く。
    """
    a_edges, b_edges = set(), set()
    a_vertices, b_vertices = set(), set()
    for e, (u, v) in enumerate(g.edges):
        side = rng.randrange(3)
        if side != 1:
            a_edges.add(e)
            a_vertices.update((u, v))
        if side != 0:
            b_edges.add(e)
            b_vertices.update((u, v))
    for v in range(g.vertex_count):
        if v in a_vertices or v in b_vertices:
            if rng.random() < 0.2:
                (a_vertices if rng.random() < 0.5 else b_vertices).add(v)
            continue
        side = rng.randrange(3)
        if side != 1:
            a_vertices.add(v)
        if side != 0:
            b_vertices.add(v)
    return (
        Subgraph(g, frozenset(a_vertices), frozenset(a_edges)),
        Subgraph(g, frozenset(b_vertices), frozenset(b_edges)),
    )


def random_disconnected_graph(rng: random.Random, max_components: int = 4, max_component_size: int = 5) -> Graph:
    """
    2 つ以上の成分を持つグラフ

    成分の一部は既出の成分の複製にして、同型な成分を持つ場合も混ぜる。
    """
    pieces: List[Graph] = []
    for _ in range(rng.randint(2, max_components)):
        if pieces and rng.random() < 0.4:
            pieces.append(rng.choice(pieces))
            continue
        size = rng.randint(1, max_component_size)
        sample = nx.gnm_random_graph(size, rng.randint(size - 1, size * (size - 1) // 2), seed=rng.randrange(2 ** 32))
        while not nx.is_connected(sample):
            sample = nx.gnm_random_graph(size, rng.randint(size - 1, size * (size - 1) // 2), seed=rng.randrange(2 ** 32))
        pieces.append(build_graph(size, sample.edges()))
    images = list(range(sum(p.vertex_count for p in pieces)))
    rng.shuffle(images)
    return relabel_graph(disjoint_union(*pieces), images)


def random_cored_graph(rng: random.Random, max_vertices: int = 14) -> Graph:
    """
    2 連結な核に木を付けた連結グラフ（b1 >= 2）

    核はサイクルに耳（既存の 2 頂点を結ぶ新しいパス）を足して作る。
    """
    if max_vertices < 4:
        raise ValueError(f"b1 >= 2 の核には 4 頂点以上が必要です: {max_vertices}")
    core_size = rng.randint(3, max(3, max_vertices // 2))
    edges = {(min(i, (i + 1) % core_size), max(i, (i + 1) % core_size)) for i in range(core_size)}
    n = core_size
    for _ in range(rng.randint(1, 3)):
        u, v = rng.sample(range(n), 2)
        interior = rng.randint(0, min(2, max_vertices - n))
        if interior == 0 and (min(u, v), max(u, v)) in edges:
            if n >= max_vertices:
                continue
            interior = 1
        path = [u] + list(range(n, n + interior)) + [v]
        edges.update((min(a, b), max(a, b)) for a, b in zip(path, path[1:]))
        n += interior
    total = rng.randint(n, max_vertices)
    for v in range(n, total):
        edges.add((rng.randrange(v), v))
    n = total
    g = build_graph(n, edges)
    images = list(range(n))
    rng.shuffle(images)
    g = relabel_graph(g, images)
    if betti_numbers(g)[1] < 2:
        return random_cored_graph(rng, max_vertices)
    return g


def _random_homomorphism_from(source: Graph, rng: random.Random, max_extra: int = 3) -> GraphHomomorphism:
    # 隣接頂点が同じ像にならないよう貪欲に像を選び、像の辺を含む行き先を作る
    max_degree = max((source.degree(v) for v in range(source.vertex_count)), default=0)
    target_size = max(1, max_degree + 1) + rng.randint(0, max_extra)
    images = []
    for v in range(source.vertex_count):
        forbidden = {images[w] for w in source.adjacency[v] if w < v}
        images.append(rng.choice([x for x in range(target_size) if x not in forbidden]))
    target_edges = {(images[u], images[v]) for u, v in source.edges}
    for _ in range(rng.randint(0, max_extra)):
        x, y = rng.sample(range(target_size), 2) if target_size > 1 else (0, 0)
        if x != y:
            target_edges.add((x, y))
    target = build_graph(target_size, target_edges)
    return GraphHomomorphism(random_orientation(source, rng), random_orientation(target, rng), tuple(images))


def random_homomorphism_chain(rng: random.Random, max_vertices: int = 7) -> Tuple[GraphHomomorphism, GraphHomomorphism]:
    """
    合成可能な準同型の組 F: Γ1 → Γ2, G: Γ2 → Γ3

    各グラフの向きもランダム。
    """
    first = _random_homomorphism_from(random_graph(rng, max_vertices, 2 * max_vertices), rng)
    second = _random_homomorphism_from(first.target, rng)
    return first, GraphHomomorphism(first.target, second.target, second.vertex_map)


def random_isomorphism(g: Graph, rng: random.Random) -> GraphHomomorphism:
    """g から頂点を並べ替えたグラフへの同型写像（行き先の向きはランダム）"""
    images = list(range(g.vertex_count))
    rng.shuffle(images)
    target = random_orientation(relabel_graph(g.unoriented(), images), rng)
    return GraphHomomorphism(g, target, tuple(images))
