"""
自然な向き付けの探索と予想の網羅的検証

向き σ が自然であるとは、H¹ が 0/1 値の形式からなる基底を持ち、各形式の台が
σ に沿って一方向に回るサイクルになっていること。
"""
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from .cochain import EdgeForm, incidence_matrix
from .exact_linalg import is_independent, is_zero_vector, rank, span_rank, to_vector
from .graph_core import Graph, Orientation, Subgraph, betti_numbers, relabel_graph

EXHAUSTIVE_BOUND = 8
METHODS = ("auto", "search", "depth_first")


@dataclass(frozen=True)
class NaturalOrientationWitness:
    """
    自然な向き付けの証拠

    Attributes:
        graph: 向き σ を持つグラフ
        basis: 0/1 値の辺形式（σ が誘導する座標）
        supports: 各形式の台となるサイクル
        cycles: 各サイクルを σ の向きにたどる頂点列
    """

    graph: Graph
    basis: Tuple[EdgeForm, ...]
    supports: Tuple[Subgraph, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def orientation(self) -> Orientation:
        return self.graph.oriented


def _make_witness(g: Graph, signs: Sequence[int], directed_cycles: Sequence[Sequence[int]]) -> NaturalOrientationWitness:
    oriented = g.with_orientation(signs)
    basis = []
    supports = []
    for cycle in directed_cycles:
        coordinates = [0] * g.edge_count
        edges = []
        for i, a in enumerate(cycle):
            b = cycle[(i + 1) % len(cycle)]
            e = g.edge_id(a, b)
            coordinates[e] = oriented.sigma(a, b)
            edges.append(e)
        basis.append(EdgeForm(oriented, tuple(coordinates)))
        supports.append(Subgraph.from_edges(oriented, edges))
    return NaturalOrientationWitness(oriented, tuple(basis), tuple(supports), tuple(tuple(c) for c in directed_cycles))


@dataclass(frozen=True)
class _Cycle:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    # 頂点列の順にたどるとき、各辺を正準向き (小 → 大) に通るなら +1
    steps: Dict[int, int]
    vector: Tuple[int, ...]


def _cycle_record(g: Graph, vertices: Sequence[int]) -> _Cycle:
    steps = {}
    for i, a in enumerate(vertices):
        b = vertices[(i + 1) % len(vertices)]
        steps[g.edge_id(a, b)] = 1 if a < b else -1
    vector = tuple(steps.get(e, 0) for e in range(g.edge_count))
    return _Cycle(tuple(vertices), tuple(sorted(steps)), steps, vector)


def _normalize_cycle(cycle: List[int]) -> Tuple[int, ...]:
    # 最小頂点から始め、2 番目 < 最後 の向きにそろえる
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    if rotated[1] > rotated[-1]:
        rotated = rotated[:1] + rotated[:0:-1]
    return tuple(rotated)


def simple_cycles(g: Graph, limit: Optional[int] = None) -> Tuple[List[Tuple[int, ...]], bool]:
    """
    単純サイクルを列挙

    各サイクルは最小頂点から始め、2 番目の頂点 < 最後の頂点となる向きで 1 度だけ現れる。
    長さ、続いて辺番号の辞書式順に整列する。

    Args:
        g: グラフ
        limit: 列挙する最大個数（None なら全て）

    Returns:
        (サイクルの頂点列のリスト, 全て列挙できたか)
    """
    generated = nx.simple_cycles(g.to_networkx())
    if limit is None:
        found = [_normalize_cycle(c) for c in generated]
        complete = True
    else:
        found = [_normalize_cycle(c) for c in itertools.islice(generated, limit + 1)]
        complete = len(found) <= limit
        found = found[:limit]

    def key(cycle):
        edges = sorted(g.edge_id(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
        return len(cycle), edges

    return sorted(found, key=key), complete


@dataclass
class _FamilySearch:
    g: Graph
    cycles: List[_Cycle]
    b1: int
    families_tried: int = 0

    def run(self) -> Optional[Tuple[List[int], List[Tuple[int, ...]]]]:
        """
        サイクル族を台の総サイズの昇順、同じサイズ内では辞書式順に試す

        Returns:
            (辺ごとの符号, 向きに沿った頂点列) または None（全て試して見つからない）
        """
        if self.b1 == 0:
            return [1] * self.g.edge_count, []
        lengths = sorted(len(c.edges) for c in self.cycles)
        if len(lengths) < self.b1:
            return None
        lowest = sum(lengths[:self.b1])
        highest = sum(lengths[-self.b1:])
        for total in range(lowest, highest + 1):
            found = self._descend(0, total, {}, [], [])
            if found is not None:
                assignment, directed = found
                return [assignment.get(e, 1) for e in range(self.g.edge_count)], directed
        return None

    def _descend(self, start, budget, assignment, vectors, directed):
        depth = len(vectors)
        if depth == self.b1:
            self.families_tried += 1
            return (dict(assignment), list(directed)) if budget == 0 else None
        remaining = self.b1 - depth
        for index in range(start, len(self.cycles)):
            cycle = self.cycles[index]
            size = len(cycle.edges)
            if size * remaining > budget:
                break
            if remaining == 1 and size != budget:
                continue
            if not is_independent(vectors + [cycle.vector], self.g.edge_count):
                continue
            for direction in ((1,) if depth == 0 else (1, -1)):
                forced = {e: direction * step for e, step in cycle.steps.items()}
                if any(assignment.get(e, sign) != sign for e, sign in forced.items()):
                    continue
                added = [e for e in forced if e not in assignment]
                assignment.update(forced)
                order = cycle.vertices if direction == 1 else tuple(reversed(cycle.vertices))
                directed.append(order)
                vectors.append(cycle.vector)
                found = self._descend(index + 1, budget - size, assignment, vectors, directed)
                vectors.pop()
                directed.pop()
                for e in added:
                    del assignment[e]
                if found is not None:
                    return found
        return None


def depth_first_witness(g: Graph) -> NaturalOrientationWitness:
    """
    深さ優先全域森から証拠を構成

    木の辺は親 → 子、木でない辺（必ず祖先と子孫を結ぶ）は子孫 → 祖先に向ける。
    すると各基本サイクルは一方向に回り、b1 本の基本サイクルが自然な基底になる。
    """
    n = g.vertex_count
    parent = [-1] * n
    depth = [-1] * n
    signs = [0] * g.edge_count
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        stack = [(root, iter(g.adjacency[root]))]
        while stack:
            v, neighbours = stack[-1]
            advanced = False
            for w in neighbours:
                if depth[w] < 0:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    signs[g.edge_id(v, w)] = 1 if v < w else -1
                    stack.append((w, iter(g.adjacency[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()

    directed = []
    for e, (u, v) in enumerate(g.edges):
        if parent[u] == v or parent[v] == u:
            continue
        descendant, ancestor = (u, v) if depth[u] > depth[v] else (v, u)
        signs[e] = 1 if descendant < ancestor else -1
        path = [descendant]
        while path[-1] != ancestor:
            path.append(parent[path[-1]])
        directed.append(tuple(reversed(path)))
    return _make_witness(g, signs, directed)


@dataclass
class NaturalOrientationResult:
    """
    探索結果

    found が False のとき exhausted はサイクルの一覧が完全で全ての族を試したことを表す。
    """

    found: bool
    method: str
    witness: Optional[NaturalOrientationWitness] = None
    exhausted: bool = False
    families_tried: int = 0
    cycles_considered: int = 0
    complete_cycle_list: bool = True


def find_natural_orientation(
    g: Graph,
    method: str = "auto",
    cycle_cap: int = 20,
    max_b1: int = 4,
) -> NaturalOrientationResult:
    """
    自然な向き付けを探す

    Args:
        g: グラフ（与えられた向きは使わない）
        method: "search"（サイクル族の探索）、"depth_first"（深さ優先の構成）、
            "auto"（b1 <= max_b1 かつサイクル一覧が完全なら search、それ以外は depth_first）
        cycle_cap: 辺数がこれ以下なら全サイクルを列挙し、超えると cycle_cap * 50 個で打ち切る
        max_b1: auto で search を使う b1 の上限

    Returns:
        NaturalOrientationResult

    Raises:
        RuntimeError: 返そうとした証拠が verify_witness を通らない場合
    """
    if method not in METHODS:
        raise ValueError(f"未知の方法です: {method}（{', '.join(METHODS)} から選んでください）")
    g = g.unoriented()
    _, b1 = betti_numbers(g)
    result = NaturalOrientationResult(found=False, method=method)

    if method == "search" or (method == "auto" and b1 <= max_b1):
        limit = None if g.edge_count <= cycle_cap else cycle_cap * 50
        cycle_lists, complete = simple_cycles(g, limit)
        result.cycles_considered = len(cycle_lists)
        result.complete_cycle_list = complete
        if complete or method == "search":
            search = _FamilySearch(g, [_cycle_record(g, c) for c in cycle_lists], b1)
            found = search.run()
            result.families_tried = search.families_tried
            if found is not None:
                signs, directed = found
                result.found = True
                result.method = "search"
                result.witness = _make_witness(g, signs, directed)
            else:
                result.exhausted = complete
            if method == "search":
                return _checked(g, result)

    if not result.found:
        result.found = True
        result.method = "depth_first"
        result.witness = depth_first_witness(g)
    return _checked(g, result)


def _checked(g: Graph, result: NaturalOrientationResult) -> NaturalOrientationResult:
    if result.witness is not None and not verify_witness(g, result.witness):
        raise RuntimeError(f"探索が検証を通らない証拠を返しました: {witness_problems(g, result.witness)}")
    return result


def witness_problems(g: Graph, w: NaturalOrientationWitness) -> List[str]:
    """
    証拠の不備を列挙する（探索とは独立に、接続行列と階数計算だけで確認）

    Returns:
        問題の説明のリスト（空なら有効）
    """
    problems = []
    if w.graph.edges != g.edges or w.graph.vertex_count != g.vertex_count:
        return ["証拠のグラフが対象のグラフと一致しません"]
    oriented = w.graph
    incidence = incidence_matrix(oriented)
    b1 = oriented.edge_count - rank(incidence)
    if len(w.basis) != b1:
        problems.append(f"基底の本数 {len(w.basis)} が b1 = {b1} と一致しません")

    vectors = []
    for index, form in enumerate(w.basis):
        values = to_vector(form.values)
        if len(values) != oriented.edge_count:
            problems.append(f"基底 {index} の長さが辺数と一致しません")
            continue
        vectors.append(values)
        if form.graph.signs != oriented.signs:
            problems.append(f"基底 {index} の座標が証拠の向きに基づいていません")
        if any(x not in (0, 1) for x in values):
            problems.append(f"基底 {index} に 0/1 以外の値があります")
            continue
        if not is_zero_vector(incidence.apply(values)):
            problems.append(f"基底 {index} が ker(D*) に入っていません")
        support = [e for e, x in enumerate(values) if x == 1]
        problems.extend(f"基底 {index}: {p}" for p in _support_problems(oriented, support))

    if vectors and span_rank(vectors, oriented.edge_count) != len(vectors):
        problems.append("基底が一次独立ではありません")
    return problems


def _support_problems(oriented: Graph, support: Sequence[int]) -> List[str]:
    if len(support) < 3:
        return ["台がサイクルではありません"]
    incoming: Dict[int, int] = {}
    outgoing: Dict[int, int] = {}
    neighbours: Dict[int, List[int]] = {}
    for e in support:
        tail, head = oriented.tail_head(e)
        outgoing[tail] = outgoing.get(tail, 0) + 1
        incoming[head] = incoming.get(head, 0) + 1
        neighbours.setdefault(tail, []).append(head)
        neighbours.setdefault(head, []).append(tail)
    problems = []
    if any(len(ns) != 2 for ns in neighbours.values()):
        problems.append("台の頂点の次数が 2 ではありません")
    if any(incoming.get(v, 0) != 1 or outgoing.get(v, 0) != 1 for v in neighbours):
        problems.append("台が一方向に回っていません")
    start = next(iter(neighbours))
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in neighbours[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if len(seen) != len(neighbours):
        problems.append("台が連結ではありません")
    return problems


def verify_witness(g: Graph, w: NaturalOrientationWitness) -> bool:
    """証拠が自然な向き付けの条件をすべて満たすか"""
    return not witness_problems(g, w)


def relabel_witness(g: Graph, w: NaturalOrientationWitness, images: Sequence[int]) -> Tuple[Graph, NaturalOrientationWitness]:
    """
    頂点を付け替えたグラフ上で同じ証拠を表し直す

    付け替えで正準ペアの順序が入れ替わる辺は、向きの符号と座標が一緒に入れ替わる。

    Returns:
        (付け替えたグラフ, 付け替えた証拠)
    """
    relabelled = relabel_graph(w.graph, images)
    directed = [tuple(images[v] for v in cycle) for cycle in w.cycles]
    new_witness = _make_witness(relabelled.unoriented(), relabelled.signs, directed)
    return relabel_graph(g.unoriented(), images), new_witness


def count_natural_orientations(g: Graph, max_edges: int = 12) -> int:
    """
    自然な向き付けの個数を全 2^|E| 通りの向きで数える（試験的）

    向きが自然であることと、その向きで一方向に回る単純サイクルが ker(D*) を
    張ることは同値。

    Raises:
        ValueError: 辺数が max_edges を超える場合
    """
    if g.edge_count > max_edges:
        raise ValueError(f"辺数 {g.edge_count} が上限 {max_edges} を超えています")
    _, b1 = betti_numbers(g)
    if b1 == 0:
        return 2 ** g.edge_count
    cycles = [_cycle_record(g, c) for c in simple_cycles(g)[0]]
    count = 0
    for mask in range(2 ** g.edge_count):
        signs = [1 if mask >> e & 1 == 0 else -1 for e in range(g.edge_count)]
        directed = [
            c.vector for c in cycles
            if len({signs[e] * step for e, step in c.steps.items()}) == 1
        ]
        if len(directed) >= b1 and span_rank(directed, g.edge_count) == b1:
            count += 1
    return count


@dataclass
class SweepReport:
    """予想の網羅的検証の結果"""

    max_vertices: int
    exhaustive_bound: int
    graphs_checked: int
    graphs_per_vertex_count: Dict[int, int]
    successes: int
    methods: Dict[str, int]
    failures: List[Dict] = field(default_factory=list)

    @property
    def all_succeeded(self) -> bool:
        return not self.failures


def _sweep_one(task: Tuple[Graph, str, int, int]) -> Tuple[bool, str, Dict]:
    g, method, cycle_cap, max_b1 = task
    try:
        result = find_natural_orientation(g, method, cycle_cap, max_b1)
    except RuntimeError as e:
        return False, method, {"edges": [list(edge) for edge in g.edges], "vertex_count": g.vertex_count, "error": str(e)}
    if result.found:
        return True, result.method, {}
    return False, result.method, {
        "vertex_count": g.vertex_count,
        "edges": [list(edge) for edge in g.edges],
        "exhausted": result.exhausted,
        "families_tried": result.families_tried,
        "cycles_considered": result.cycles_considered,
    }


def conjecture_sweep(
    max_vertices: int,
    method: str = "auto",
    workers: int = 1,
    cycle_cap: int = 20,
    max_b1: int = 4,
    verbose: bool = False,
) -> SweepReport:
    """
    max_vertices 頂点以下の全ての連結グラフで自然な向き付けを探す

    Args:
        max_vertices: 頂点数の上限（EXHAUSTIVE_BOUND 以下）
        method: find_natural_orientation に渡す方法
        workers: 2 以上ならプロセスプールで並列に調べる
        cycle_cap: サイクル列挙の上限
        max_b1: auto で search を使う b1 の上限
        verbose: 進捗を stderr に表示するか

    Returns:
        SweepReport（結果はグラフの生成順に並ぶ）
    """
    from .generators import connected_graphs

    if not 1 <= max_vertices <= EXHAUSTIVE_BOUND:
        raise ValueError(f"max_vertices は 1 以上 {EXHAUSTIVE_BOUND} 以下で指定してください: {max_vertices}")

    graphs: List[Graph] = []
    per_count: Dict[int, int] = {}
    for n in range(1, max_vertices + 1):
        batch = connected_graphs(n, verbose=verbose)
        per_count[n] = len(batch)
        graphs.extend(batch)
    if verbose:
        print(f"{len(graphs)} 個の連結グラフを検証します", file=sys.stderr)

    tasks = [(g, method, cycle_cap, max_b1) for g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(tqdm(
                pool.map(_sweep_one, tasks, chunksize=64),
                total=len(tasks), desc="natorient", file=sys.stderr, disable=not verbose,
            ))
    else:
        outcomes = [
            _sweep_one(task)
            for task in tqdm(tasks, desc="natorient", file=sys.stderr, disable=not verbose)
        ]

    methods: Dict[str, int] = {}
    failures = []
    for ok, used, detail in outcomes:
        methods[used] = methods.get(used, 0) + 1
        if not ok:
            failures.append(detail)
    return SweepReport(
        max_vertices=max_vertices,
        exhaustive_bound=EXHAUSTIVE_BOUND,
        graphs_checked=len(graphs),
        graphs_per_vertex_count=per_count,
        successes=len(graphs) - len(failures),
        methods=dict(sorted(methods.items())),
        failures=failures,
    )
