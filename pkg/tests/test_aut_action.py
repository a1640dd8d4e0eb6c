import itertools

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from src.graph_derham.aut_action import (
    Permutation,
    action_kernel,
    automorphism_group,
    canonical_form,
    classify_b1_one,
    group_profile,
    induced_action,
    is_automorphism,
    is_trivial_kernel_case,
    isomorphic_components_check,
    kernel_characterization_h0,
    kernel_characterization_h1,
    kernel_restriction_check,
    rotates_cycle,
)
from src.graph_derham.exact_linalg import RationalMatrix
from src.graph_derham.generators import (
    complete_graph,
    connected_graphs,
    cycle_graph,
    path_graph,
    random_disconnected_graph,
    random_graph,
    random_orientation,
)
from src.graph_derham.graph_core import (
    Graph,
    betti_numbers,
    build_graph,
    disjoint_union,
    is_connected,
    relabel_graph,
)

BOWTIE = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def _networkx_automorphism_count(g: Graph) -> int:
    reference = nx.Graph()
    reference.add_nodes_from(range(g.vertex_count))
    reference.add_edges_from(g.edges)
    return sum(1 for _ in GraphMatcher(reference, reference).isomorphisms_iter())


def test_automorphism_group_orders():
    assert automorphism_group(cycle_graph(5)).order == 10
    assert automorphism_group(complete_graph(4)).order == 24
    assert automorphism_group(path_graph(3)).order == 2
    assert automorphism_group(BOWTIE).order == 8
    assert automorphism_group(Graph(1, ())).order == 1
    with pytest.raises(ValueError):
        automorphism_group(Graph(0, ()))


def test_automorphism_group_against_networkx(rng):
    for _ in range(60):
        g = random_graph(rng, 7, 12)
        group = automorphism_group(g)
        assert group.order == _networkx_automorphism_count(g)
        assert group.is_closed()
        assert all(is_automorphism(g, p) for p in group.elements)


def test_automorphisms_match_brute_force():
    g = build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    brute = {Permutation(images) for images in itertools.permutations(range(6))
             if is_automorphism(g, Permutation(images))}
    assert set(automorphism_group(g).elements) == brute


def test_canonical_form(rng):
    for _ in range(40):
        g = random_graph(rng, 8, 14)
        images = list(range(g.vertex_count))
        rng.shuffle(images)
        assert canonical_form(relabel_graph(g, images)) == canonical_form(g)
    assert canonical_form(cycle_graph(6)) != canonical_form(disjoint_union(cycle_graph(3), cycle_graph(3)))


@pytest.mark.parametrize("n", range(3, 11))
def test_cycle_graph_degree_one_action(n):
    action = induced_action(cycle_graph(n), 1)
    assert action.order == 2
    assert len(action.kernel) == n
    assert group_profile(action).cyclic


def test_two_triangles_degree_zero_action():
    g = disjoint_union(cycle_graph(3), cycle_graph(3))
    action = induced_action(g, 0)
    assert automorphism_group(g).order == 72
    assert action.order == 2
    assert len(action.kernel) == 36


def test_complete_graph_kernel_is_trivial():
    action = induced_action(complete_graph(4), 1)
    assert len(action.kernel) == 1
    assert action.order == 24
    profile = group_profile(action)
    assert profile.order == 24
    assert not profile.abelian


def test_three_squares(three_squares):
    group = automorphism_group(three_squares)
    assert group.order == 3072
    zero = induced_action(three_squares, 0, group)
    assert len(zero.kernel) == 512
    assert zero.order == 6
    one = induced_action(three_squares, 1, group)
    # 各正方形の回転だけが核に入り、像は符号付き置換行列
    assert len(one.kernel) == 64
    assert one.order == 48


def test_phi_is_a_homomorphism(rng):
    g = random_orientation(BOWTIE, rng)
    action = induced_action(g, 1)
    for (p, a), (q, b) in itertools.product(action.elements, repeat=2):
        assert action.matrix_of(p * q) == a @ b


def test_first_isomorphism_theorem_count(rng):
    for _ in range(30):
        g = random_orientation(random_graph(rng, 7, 11), rng)
        group = automorphism_group(g)
        for degree in (0, 1):
            action = induced_action(g, degree, group)
            assert action.order * len(action.kernel) == group.order
            assert set(action.kernel) == set(action_kernel(g, degree, group))


def test_kernel_does_not_depend_on_orientation(rng):
    for _ in range(5):
        oriented = random_orientation(BOWTIE, rng)
        assert action_kernel(oriented, 1) == action_kernel(BOWTIE, 1)
    assert len(action_kernel(random_orientation(complete_graph(4), rng), 1)) == 1


def test_kernel_characterization_h0():
    connected = kernel_characterization_h0(cycle_graph(5))
    assert connected.agree
    assert connected.kernel_order == connected.group_order == 10

    two = kernel_characterization_h0(disjoint_union(cycle_graph(3), cycle_graph(3)))
    assert two.agree
    assert two.kernel_order == two.component_preserving_order == 36

    mixed = kernel_characterization_h0(disjoint_union(cycle_graph(3), cycle_graph(4)))
    assert mixed.agree
    assert mixed.induced_order == 1


def test_kernel_characterization_h0_on_random_disconnected_graphs(rng):
    for _ in range(200):
        g = random_disconnected_graph(rng, max_components=3, max_component_size=3)
        report = kernel_characterization_h0(g)
        assert report.agree, g.edges
        assert report.kernel_order == report.component_preserving_order


def test_kernel_characterization_h1():
    c6 = kernel_characterization_h1(cycle_graph(6))
    assert c6.agree
    assert c6.kernel_order == c6.rotation_order == 6

    bowtie = kernel_characterization_h1(BOWTIE)
    assert bowtie.agree
    assert bowtie.kernel_order == 1

    for g in (complete_graph(4), build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])):
        assert kernel_characterization_h1(g).agree
    with pytest.raises(ValueError):
        kernel_characterization_h1(path_graph(4))


def test_rotates_cycle():
    rotation = Permutation((1, 2, 3, 0))
    reflection = Permutation((0, 3, 2, 1))
    assert rotates_cycle(rotation, (0, 1, 2, 3))
    assert not rotates_cycle(reflection, (0, 1, 2, 3))
    assert rotates_cycle(Permutation.identity(4), (0, 1, 2, 3))


def test_classify_b1_one():
    c7 = classify_b1_one(cycle_graph(7))
    assert (c7.induced_group, c7.condition) == ("Z/2", "1")

    lollipop = classify_b1_one(build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]))
    assert (lollipop.induced_group, lollipop.condition) == ("Z/2", "2")

    antipodal = classify_b1_one(build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]))
    assert (antipodal.induced_group, antipodal.condition) == ("Z/2", "3")

    lopsided = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (5, 6)])
    result = classify_b1_one(lopsided)
    assert (result.induced_group, result.condition, result.induced_order) == ("trivial", "none", 1)

    with pytest.raises(ValueError):
        classify_b1_one(complete_graph(4))
    with pytest.raises(ValueError):
        classify_b1_one(disjoint_union(cycle_graph(3), cycle_graph(3)))


def test_group_profile():
    c5 = group_profile(automorphism_group(cycle_graph(5)))
    assert c5.order == 10
    assert not c5.abelian
    assert not c5.cyclic
    assert c5.element_orders == {1: 1, 2: 5, 5: 4}

    trivial = group_profile(automorphism_group(Graph(1, ())))
    assert trivial.order == 1
    assert trivial.cyclic

    assert group_profile(induced_action(path_graph(2), 0)).order == 1
    assert group_profile(induced_action(cycle_graph(4), 1)).generators == [RationalMatrix.from_rows([[-1]])]


def test_isomorphic_components_check():
    two = isomorphic_components_check(disjoint_union(cycle_graph(3), cycle_graph(3)))
    assert two.holds and two.has_isomorphic_components and two.induced_order == 2
    different = isomorphic_components_check(disjoint_union(cycle_graph(3), cycle_graph(4)))
    assert different.holds and not different.has_isomorphic_components and different.induced_order == 1
    assert isomorphic_components_check(cycle_graph(5)).holds


def test_kernel_restriction_check(theta, three_squares):
    report = kernel_restriction_check(theta)
    assert report.holds
    assert report.pointwise_required
    squares = kernel_restriction_check(three_squares)
    assert squares.holds
    assert not squares.pointwise_required
    assert squares.kernel_order == 64
    assert kernel_restriction_check(build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])).holds

    triangle_and_edge = kernel_restriction_check(build_graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)]))
    assert triangle_and_edge.holds
    # 辺の反転と三角形の回転が核をなす
    assert triangle_and_edge.kernel_order == 6
    assert not triangle_and_edge.pointwise_required


def test_kernel_restriction_on_random_graphs(rng):
    checked = 0
    while checked < 30:
        g = random_graph(rng, 8, 12, min_vertices=3)
        if not is_connected(g) or betti_numbers(g)[1] < 1:
            continue
        assert kernel_restriction_check(g).holds
        checked += 1
    for _ in range(60):
        g = random_disconnected_graph(rng)
        assert kernel_restriction_check(g).holds, g.edges


def _assert_trivial_kernels(max_vertices: int) -> int:
    checked = 0
    for n in range(1, max_vertices + 1):
        for g in connected_graphs(n):
            if is_trivial_kernel_case(g):
                assert len(action_kernel(g, 1)) == 1, g.edges
                checked += 1
    return checked


def test_trivial_kernel_for_small_graphs():
    assert is_trivial_kernel_case(complete_graph(4))
    assert not is_trivial_kernel_case(cycle_graph(5))
    assert _assert_trivial_kernels(7) > 0


@pytest.mark.slow
def test_trivial_kernel_exhaustive_to_eight_vertices():
    assert _assert_trivial_kernels(8) > 0
