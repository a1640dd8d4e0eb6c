import pytest

from src.graph_derham.generators import cycle_graph, random_graph, random_orientation
from src.utils.graph_file import format_graph_file, parse_cover_file, parse_graph_file

LOLLIPOP = """\
# 三角形と尻尾
n 5
0 1
1 2
2 0 -
2 3 +

3 4   # 末尾
"""


def test_parse_graph_file():
    g = parse_graph_file(LOLLIPOP)
    assert g.vertex_count == 5
    assert g.edges == ((0, 1), (0, 2), (1, 2), (2, 3), (3, 4))
    assert g.orientation is not None
    # 2 0 - は σ(2, 0) = -1 つまり σ(0, 2) = +1
    assert g.sigma(0, 2) == 1
    assert g.signs == (1, 1, 1, 1, 1)


def test_parse_reversed_pair():
    g = parse_graph_file("n 2\n1 0\n")
    assert g.sigma(1, 0) == 1
    assert g.signs == (-1,)


def test_parse_empty_graphs():
    assert parse_graph_file("n 0\n").vertex_count == 0
    assert parse_graph_file("n 3\n").edge_count == 0


@pytest.mark.parametrize("text, line", [
    ("", "1行目"),
    ("m 3\n", "1行目"),
    ("n x\n", "1行目"),
    ("n 3\n0 0\n", "2行目"),
    ("n 3\n0 1\n1 3\n", "3行目"),
    ("n 3\n0\n", "2行目"),
    ("n 3\n0 1 *\n", "2行目"),
    ("n 3\n0 1 +\n1 0 +\n", "3行目"),
    ("# 先頭のコメント\nn 2\n\n0 a\n", "4行目"),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ValueError, match=line):
        parse_graph_file(text)


def test_repeated_consistent_edges_are_merged():
    g = parse_graph_file("n 3\n0 1 +\n1 0 -\n1 2\n")
    assert g.edges == ((0, 1), (1, 2))
    assert g.signs == (1, 1)


def test_format_then_parse_keeps_orientation(rng):
    for _ in range(20):
        g = random_orientation(random_graph(rng, 10, 20), rng)
        parsed = parse_graph_file(format_graph_file(g))
        assert parsed.edges == g.edges
        assert parsed.signs == g.signs


def test_parse_cover_file():
    c4 = parse_graph_file(format_graph_file(cycle_graph(4)))
    a, b = parse_cover_file("A 0 1\nA 1 2\nA 2 3\nB 3 0\nB 1\n", c4)
    assert a.vertices == {0, 1, 2, 3}
    assert len(a.edges) == 3
    assert b.vertices == {0, 1, 3}
    assert b.edges == {c4.edge_id(0, 3)}


@pytest.mark.parametrize("text", ["C 0 1\n", "A 0 2\n", "A 0 9\n", "A\n", "A 0 1 2\n"])
def test_parse_cover_file_errors(text):
    with pytest.raises(ValueError, match="1行目"):
        parse_cover_file(text, cycle_graph(4))
