"""
グラフファイル（辺リスト形式）の読み書き

    n <頂点数>
    u v [s]

s は σ(u, v) の符号 + か -（省略時は +）。空行と # 以降は無視する。
"""
from typing import Dict, List, Tuple

from ..graph_derham.graph_core import Graph, Orientation, Subgraph


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            lines.append((number, fields))
    return lines


def _vertex(token: str, number: int, vertex_count: int) -> int:
    try:
        v = int(token)
    except ValueError:
        raise ValueError(f"{number}行目: 頂点番号が整数ではありません: {token}")
    if not 0 <= v < vertex_count:
        raise ValueError(f"{number}行目: 頂点番号 {v} が範囲外です（0..{vertex_count - 1}）")
    return v


def parse_graph_file(text: str) -> Graph:
    """
    グラフファイルを読み、向き付きの正準グラフを返す

    同じ辺が複数回現れてもよいが、向きが矛盾する場合はエラー。

    Args:
        text: ファイル内容

    Returns:
        向きを明示的に持つ Graph

    Raises:
        ValueError: 書式の誤り・ループ辺・範囲外の頂点・向きの矛盾（行番号付き）
    """
    lines = _content_lines(text)
    if not lines:
        raise ValueError("1行目: ヘッダ 'n <頂点数>' がありません")
    number, header = lines[0]
    if len(header) != 2 or header[0] != "n":
        raise ValueError(f"{number}行目: ヘッダは 'n <頂点数>' の形式で書いてください")
    try:
        vertex_count = int(header[1])
    except ValueError:
        raise ValueError(f"{number}行目: 頂点数が整数ではありません: {header[1]}")
    if vertex_count < 0:
        raise ValueError(f"{number}行目: 頂点数が負です: {vertex_count}")

    signs: Dict[Tuple[int, int], int] = {}
    for number, fields in lines[1:]:
        if len(fields) not in (2, 3):
            raise ValueError(f"{number}行目: 辺は 'u v [+|-]' の形式で書いてください")
        u = _vertex(fields[0], number, vertex_count)
        v = _vertex(fields[1], number, vertex_count)
        if u == v:
            raise ValueError(f"{number}行目: ループ辺 ({u}, {v}) は使えません")
        mark = fields[2] if len(fields) == 3 else "+"
        if mark not in ("+", "-"):
            raise ValueError(f"{number}行目: 向きは + か - で指定してください: {mark}")
        sign = 1 if mark == "+" else -1
        key, canonical_sign = ((u, v), sign) if u < v else ((v, u), -sign)
        if signs.get(key, canonical_sign) != canonical_sign:
            raise ValueError(f"{number}行目: 辺 ({u}, {v}) の向きが前の行と矛盾しています")
        signs[key] = canonical_sign

    edges = tuple(sorted(signs))
    return Graph(vertex_count, edges, Orientation(tuple(signs[e] for e in edges)))


def format_graph_file(g: Graph) -> str:
    """グラフをファイル形式に書き出す（符号は常に明示）"""
    lines = [f"n {g.vertex_count}"]
    for (u, v), sign in zip(g.edges, g.signs):
        lines.append(f"{u} {v} {'+' if sign == 1 else '-'}")
    return "\n".join(lines) + "\n"


def parse_cover_file(text: str, g: Graph) -> Tuple[Subgraph, Subgraph]:
    """
    被覆ファイルを読む

    各行は 'A u v'（A の辺）、'B u v'（B の辺）、'A u' / 'B u'（辺のない頂点）。
    辺の端点は自動的に含まれる。

    Returns:
        (A, B)

    Raises:
        ValueError: 書式の誤りや Γ にない辺（行番号付き）
    """
    parts = {"A": (set(), set()), "B": (set(), set())}
    for number, fields in _content_lines(text):
        if fields[0] not in parts or len(fields) not in (2, 3):
            raise ValueError(f"{number}行目: 'A u v' / 'B u v' / 'A u' / 'B u' の形式で書いてください")
        vertices, edges = parts[fields[0]]
        ends = [_vertex(token, number, g.vertex_count) for token in fields[1:]]
        if len(ends) == 1:
            vertices.add(ends[0])
            continue
        if not g.has_edge(*ends):
            raise ValueError(f"{number}行目: 辺 ({ends[0]}, {ends[1]}) はグラフにありません")
        edges.add(g.edge_id(*ends))
        vertices.update(ends)
    return (
        Subgraph(g, frozenset(parts["A"][0]), frozenset(parts["A"][1])),
        Subgraph(g, frozenset(parts["B"][0]), frozenset(parts["B"][1])),
    )
