import pytest

from src.graph_derham.aut_action import automorphism_group
from src.graph_derham.cochain import cohomology
from src.graph_derham.decomposition import (
    aut_restriction_check,
    cycle_forest,
    forest_stabilizer,
    kernel_interpretation,
    retract_homomorphism,
    splitting_hypotheses,
    splitting_verification,
    verify_minimality,
)
from src.graph_derham.exact_linalg import rank
from src.graph_derham.generators import (
    cycle_graph,
    path_graph,
    random_cored_graph,
    random_disconnected_graph,
    star_graph,
)
from src.graph_derham.graph_core import betti_numbers, build_graph, disjoint_union, full_subgraph
from src.graph_derham.morphisms import compose, inclusion_homomorphism, induced_cohomology_map

TWO_TRIANGLES_WITH_BRIDGE = build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
TRIANGLE_WITH_THREE_PENDANTS = build_graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (0, 5)])
TRIANGLE_AND_EDGE = build_graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)])


def test_lollipop_layers(lollipop):
    d = cycle_forest(lollipop)
    assert d.layers == (frozenset({4}), frozenset({3}))
    assert d.cycle_retract.vertices == {0, 1, 2}
    assert {lollipop.edges[e] for e in d.forest.edges} == {(2, 3), (3, 4)}
    assert d.intersection_vertices == {2}


def test_cycle_has_empty_forest():
    d = cycle_forest(cycle_graph(5))
    assert d.forest.is_empty
    assert d.cycle_retract == full_subgraph(cycle_graph(5))
    assert d.layers == ()


def test_tree_is_all_forest():
    tree = path_graph(4)
    d = cycle_forest(tree)
    assert d.forest == full_subgraph(tree)
    assert d.cycle_retract.is_empty
    assert d.layers == (frozenset({0, 3}), frozenset({1, 2}))
    with pytest.raises(ValueError):
        retract_homomorphism(d)
    assert cycle_forest(path_graph(2)).layers == (frozenset({0, 1}),)
    assert cycle_forest(star_graph(3)).layers == (frozenset({1, 2, 3}), frozenset({0}))


def test_tree_components_go_wholly_into_forest():
    d = cycle_forest(TRIANGLE_AND_EDGE)
    assert d.cycle_retract.vertices == {0, 1, 2}
    assert d.forest.vertices == {3, 4}
    assert d.intersection_vertices == frozenset()
    assert d.layers == (frozenset({3, 4}),)

    mixed = cycle_forest(disjoint_union(TRIANGLE_WITH_THREE_PENDANTS, star_graph(2)))
    assert mixed.cycle_retract.vertices == {0, 1, 2}
    assert mixed.forest.vertices == {0, 3, 4, 5, 6, 7, 8}
    assert mixed.intersection_vertices == {0}
    assert mixed.layers == (frozenset({3, 4, 5, 7, 8}), frozenset({6}))
    with pytest.raises(ValueError):
        retract_homomorphism(d)


def test_retract_homomorphism(lollipop):
    h = retract_homomorphism(cycle_forest(lollipop))
    assert h.vertex_map == (0, 1, 2, 0, 2)
    # 包含との合成は Cyc(Γ) 上で恒等
    inclusion = inclusion_homomorphism(cycle_forest(lollipop).cycle_retract)
    assert compose(h, inclusion).vertex_map == (0, 1, 2)

    c5 = cycle_graph(5)
    assert retract_homomorphism(cycle_forest(c5)).vertex_map == (0, 1, 2, 3, 4)

    pendants = build_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)])
    h = retract_homomorphism(cycle_forest(pendants))
    assert h(3) == h(4) == 1


def test_retract_is_cohomology_isomorphism(rng):
    for _ in range(30):
        g = random_cored_graph(rng, 10)
        h = retract_homomorphism(cycle_forest(g))
        for degree in (0, 1):
            m = induced_cohomology_map(h, degree)
            assert m.rows == m.cols == cohomology(g, degree).dimension
            assert rank(m) == m.rows


def test_minimality():
    theta = build_graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    certificate = verify_minimality(theta)
    assert certificate.holds
    assert all(after[1] == 1 for _, after in certificate.edge_removals)

    bridged = verify_minimality(TWO_TRIANGLES_WITH_BRIDGE)
    assert bridged.holds
    assert dict(bridged.edge_removals)[(2, 3)] == (2, 2)

    tree = verify_minimality(star_graph(3))
    assert tree.holds and tree.vacuous

    mixed = verify_minimality(TRIANGLE_AND_EDGE)
    assert mixed.holds
    assert mixed.tree_components == 1
    assert mixed.graph_betti == (2, 1)
    assert mixed.retract_betti == (1, 1)


def test_minimality_on_random_graphs(rng):
    for _ in range(30):
        g = random_cored_graph(rng, 12)
        certificate = verify_minimality(g)
        assert certificate.holds, certificate.failures
        assert certificate.retract_betti == betti_numbers(g)
    for _ in range(100):
        g = random_disconnected_graph(rng)
        certificate = verify_minimality(g)
        assert certificate.holds, g.edges
        b0, b1 = betti_numbers(g)
        if not certificate.vacuous:
            assert certificate.retract_betti == (b0 - certificate.tree_components, b1)


def test_aut_restriction(lollipop):
    report = aut_restriction_check(lollipop)
    assert report.holds
    assert report.group_order == 2

    pendants = aut_restriction_check(TRIANGLE_WITH_THREE_PENDANTS)
    assert pendants.holds
    assert pendants.group_order == 12

    # 1 本の辺の成分は両端点を入れ替える自己同型を持つ
    mixed = aut_restriction_check(TRIANGLE_AND_EDGE)
    assert mixed.holds
    assert mixed.group_order == 12


def test_aut_restriction_on_random_graphs(rng):
    for _ in range(30):
        assert aut_restriction_check(random_cored_graph(rng, 10)).holds
    for _ in range(60):
        g = random_disconnected_graph(rng)
        assert aut_restriction_check(g).holds, g.edges


def test_kernel_interpretation(theta, theta_with_pendants):
    pendants = kernel_interpretation(theta_with_pendants)
    assert pendants.holds
    assert pendants.s_order == pendants.kernel_order == 2

    bare = kernel_interpretation(theta)
    assert bare.holds
    assert bare.s_order == bare.kernel_order == 1

    mixed = build_graph(8, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0), (4, 6), (6, 7)])
    certificate = kernel_interpretation(mixed)
    assert certificate.holds
    assert certificate.s_order == certificate.kernel_order == 1


def test_kernel_interpretation_preconditions():
    with pytest.raises(ValueError):
        kernel_interpretation(cycle_graph(5))
    with pytest.raises(ValueError):
        kernel_interpretation(disjoint_union(cycle_graph(3), cycle_graph(3)))


def test_kernel_interpretation_on_random_cored_graphs(rng):
    for _ in range(200):
        g = random_cored_graph(rng, 14)
        certificate = kernel_interpretation(g)
        assert certificate.holds, g.edges


def test_forest_stabilizer_extends_by_identity(theta_with_pendants):
    stabilizer = forest_stabilizer(cycle_forest(theta_with_pendants))
    group = automorphism_group(theta_with_pendants)
    for s in stabilizer.elements:
        extended = stabilizer.extend(s)
        assert extended in group
        assert all(extended(v) == v for v in range(5))


def test_splitting_examples(theta_with_pendants):
    bowtie_with_pendant = build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 5)])
    certificate = splitting_verification(bowtie_with_pendant)
    assert certificate.hypotheses_met
    assert certificate.holds
    assert (certificate.automorphism_order, certificate.kernel_order, certificate.complement_order) == (2, 1, 2)

    pendants = splitting_verification(theta_with_pendants)
    assert pendants.holds
    assert pendants.kernel_order == 2
    assert pendants.automorphism_order == pendants.kernel_order * pendants.complement_order == 8
    assert pendants.commute


def test_splitting_hypotheses(theta):
    assert splitting_hypotheses(disjoint_union(cycle_graph(3), cycle_graph(3))) == ["not connected"]
    assert splitting_hypotheses(cycle_graph(5)) == ["b1 < 2"]
    two_pendants = build_graph(7, list(theta.edges) + [(2, 5), (3, 6)])
    assert splitting_hypotheses(two_pendants) == ["H0(F) nontrivial"]
    assert splitting_hypotheses(theta) == []

    gated = splitting_verification(disjoint_union(cycle_graph(3), cycle_graph(3)))
    assert not gated.hypotheses_met
    assert not gated.holds
    assert gated.failed_hypotheses == ["not connected"]


def test_splitting_on_random_cored_graphs(rng):
    for _ in range(40):
        g = random_cored_graph(rng, 10)
        certificate = splitting_verification(g)
        if certificate.hypotheses_met:
            assert certificate.holds, g.edges
