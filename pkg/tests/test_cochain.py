import random
from fractions import Fraction

import pytest

from src.graph_derham.cochain import (
    EdgeForm,
    VertexForm,
    adjoint,
    coboundary,
    cohomology,
    harmonic_part,
    incidence_matrix,
    laplacians,
    spanning_forest,
    support_subgraph,
)
from src.graph_derham.exact_linalg import RationalMatrix, kernel_basis, to_vector
from src.graph_derham.generators import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_edge_form,
    random_graph,
    random_orientation,
)
from src.graph_derham.graph_core import (
    betti_numbers,
    build_graph,
    connected_components,
    disjoint_union,
    full_subgraph,
    induced_subgraph,
)


def test_coboundary_examples():
    p2 = path_graph(2)
    assert coboundary(p2, [0, 1]).values == (1,)
    c3 = cycle_graph(3)
    df = coboundary(c3, [0, 1, 2])
    # 0 → 1 → 2 → 0 に沿った値
    assert (df.value(0, 1), df.value(1, 2), df.value(2, 0)) == (1, 1, -2)
    assert coboundary(complete_graph(4), [7, 7, 7, 7]).is_zero()


def test_coboundary_respects_orientation():
    g = path_graph(2).with_orientation([-1])
    df = coboundary(g, [0, 1])
    assert df.values == (-1,)
    assert df.value(0, 1) == 1


def test_incidence_matrix():
    assert incidence_matrix(path_graph(2)) == RationalMatrix.from_rows([[-1], [1]])
    c3 = incidence_matrix(cycle_graph(3))
    assert c3.shape == (3, 3)
    assert all(sum(column) == 0 for column in c3.columns())
    # D* は D の随伴
    g = random_orientation(cycle_graph(5), random.Random(3))
    f = to_vector([1, -2, 3, 0, 5])
    omega = to_vector([2, 1, -1, 4, 3])
    lhs = sum(a * b for a, b in zip(coboundary(g, f).values, omega))
    rhs = sum(a * b for a, b in zip(f, adjoint(g, omega).values))
    assert lhs == rhs


def test_laplacians():
    plus, minus = laplacians(cycle_graph(3))
    expected = RationalMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert plus == expected
    assert all(sum(row) == 0 for row in plus.entries)
    assert len(kernel_basis(laplacians(cycle_graph(4))[1])) == 1
    assert plus.is_symmetric() and minus.is_symmetric()


def test_cohomology_degree_zero():
    two_triangles = disjoint_union(cycle_graph(3), cycle_graph(3))
    space = cohomology(two_triangles, 0)
    assert space.dimension == 2
    assert space.vectors() == [to_vector([1, 1, 1, 0, 0, 0]), to_vector([0, 0, 0, 1, 1, 1])]
    assert space.supports[1] == induced_subgraph(two_triangles, [3, 4, 5])


def test_cohomology_degree_one():
    c4 = cycle_graph(4)
    space = cohomology(c4, 1)
    assert space.dimension == 1
    assert space.supports[0] == full_subgraph(c4)

    bowtie = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    space = cohomology(bowtie, 1)
    assert space.dimension == 2
    assert {frozenset(s.vertices) for s in space.supports} == {frozenset({0, 1, 2}), frozenset({2, 3, 4})}


def test_cohomology_rejects_other_degrees():
    with pytest.raises(ValueError):
        cohomology(cycle_graph(3), 2)


def test_cohomology_dimensions_match_betti(rng):
    for _ in range(500):
        g = random_orientation(random_graph(rng, 30, 60), rng)
        b0 = cohomology(g, 0).dimension
        b1 = cohomology(g, 1).dimension
        assert b0 == len(kernel_basis(incidence_matrix(g).transpose()))
        assert b1 == len(kernel_basis(incidence_matrix(g)))
        assert b1 == g.edge_count - g.vertex_count + b0
        for form in cohomology(g, 1).basis:
            assert adjoint(g, form).is_zero()


def test_coordinates_and_harmonic_part(rng):
    for _ in range(30):
        g = random_orientation(random_graph(rng, 10, 20), rng)
        space = cohomology(g, 1)
        omega = random_edge_form(g, rng)
        harmonic = harmonic_part(g, omega)
        assert adjoint(g, harmonic).is_zero()
        coordinates = space.coordinates(harmonic)
        assert len(coordinates) == space.dimension
        assert harmonic_part(g, harmonic) == harmonic


def test_coordinates_reject_non_harmonic_form():
    c3 = cycle_graph(3)
    with pytest.raises(ValueError):
        cohomology(c3, 1).coordinates([1, 0, 0])


def test_support_subgraph():
    c4 = cycle_graph(4)
    assert support_subgraph(EdgeForm(c4, (0, 0, 0, 0))).is_empty
    two = disjoint_union(c4, cycle_graph(3))
    indicator = VertexForm(two, (0, 0, 0, 0, 1, 1, 1))
    assert support_subgraph(indicator) == induced_subgraph(two, [4, 5, 6])

    with_chord = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    space = cohomology(with_chord, 1)
    for support, cycle in zip(space.supports, space.cycles):
        assert support.vertices == frozenset(cycle)
        assert len(support.edges) == len(cycle)


def test_edge_form_pair_values():
    g = path_graph(3).with_orientation([1, -1])
    omega = EdgeForm.from_pair_values(g, {(0, 1): 2, (2, 1): Fraction(1, 2)})
    assert omega.value(0, 1) == 2
    assert omega.value(1, 2) == Fraction(-1, 2)
    with pytest.raises(ValueError):
        EdgeForm(g, (1,))


def test_spanning_forest_is_breadth_first():
    # 三角形と尻尾: 0 から 1, 2 を先に、3 は 2 の子
    g = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    parent, depth, tree_edges = spanning_forest(g)
    assert parent == (-1, 0, 0, 2, 3)
    assert depth == (0, 1, 1, 2, 3)
    assert [g.edges[e] for e in tree_edges] == [(0, 1), (0, 2), (2, 3), (3, 4)]


def test_spanning_forest_on_random_graphs(rng):
    for _ in range(60):
        g = random_graph(rng, 12, 18)
        parent, depth, tree_edges = spanning_forest(g)
        b0, _ = betti_numbers(g)
        assert len(tree_edges) == g.vertex_count - b0
        roots = {component[0] for component in connected_components(g)}
        for v in range(g.vertex_count):
            if v in roots:
                assert parent[v] == -1 and depth[v] == 0
            else:
                assert g.edge_id(parent[v], v) in tree_edges
                assert depth[v] == depth[parent[v]] + 1
