from fractions import Fraction

import pytest

from src.graph_derham.aut_action import automorphism_group
from src.graph_derham.cochain import EdgeForm, VertexForm, coboundary, cohomology
from src.graph_derham.decomposition import cycle_forest
from src.graph_derham.exact_linalg import rank
from src.graph_derham.generators import (
    cycle_graph,
    lollipop_graph,
    path_graph,
    random_edge_form,
    random_homomorphism_chain,
    random_isomorphism,
    random_orientation,
    random_graph,
    random_vertex_form,
)
from src.graph_derham.morphisms import (
    ChainVector,
    GraphHomomorphism,
    compose,
    form_pullback_matrix,
    identity_homomorphism,
    inclusion_homomorphism,
    induced_cohomology_map,
    pullback_edge,
    pullback_matrix,
    pullback_vertex,
    pushforward,
)


def _pair(form, chain) -> Fraction:
    """チェインに形式を積分した値 Σ c·ω"""
    if chain.degree == 0:
        return sum((c * x for c, x in zip(chain.coefficients, form.values)), Fraction(0))
    total = Fraction(0)
    for c, (u, v) in zip(chain.coefficients, chain.graph.edges):
        total += c * form.value(u, v)
    return total


def _invertible(m) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def test_homomorphism_validation():
    p3 = path_graph(3)
    c3 = cycle_graph(3)
    GraphHomomorphism(p3, c3, (0, 1, 2))
    with pytest.raises(ValueError):
        GraphHomomorphism(p3, c3, (0, 0, 1))
    with pytest.raises(ValueError):
        GraphHomomorphism(p3, path_graph(3), (0, 2, 1))
    with pytest.raises(ValueError):
        GraphHomomorphism(p3, c3, (0, 1))
    with pytest.raises(ValueError):
        GraphHomomorphism(p3, c3, (0, 1, 3))


def test_pushforward():
    c4 = cycle_graph(4)
    identity = identity_homomorphism(c4)
    chain = ChainVector.from_vertices(c4, {0: 1, 2: 3})
    assert pushforward(identity, chain) == chain

    wrap = GraphHomomorphism(path_graph(4), cycle_graph(3), (0, 1, 2, 0))
    pushed = pushforward(wrap, ChainVector.from_vertices(wrap.source, {0: 1, 3: 1}))
    assert pushed.coefficients == (2, 0, 0)
    edges = ChainVector.from_pairs(wrap.source, {(2, 3): 1})
    # (2, 3) ↦ (2, 0) = -(0, 2)
    assert pushforward(wrap, edges).coefficients[wrap.target.edge_id(0, 2)] == -1


def test_pullback_examples():
    c4 = cycle_graph(4)
    generator = cohomology(c4, 1).basis[0]
    identity = identity_homomorphism(c4)
    assert pullback_edge(identity, generator) == generator
    reflection = GraphHomomorphism(c4, c4, (0, 3, 2, 1))
    assert pullback_edge(reflection, generator) == generator.scale(-1)
    assert pullback_edge(reflection, EdgeForm(c4, (0, 0, 0, 0))).is_zero()
    assert pullback_vertex(reflection, VertexForm(c4, (1, 2, 3, 4))).values == (1, 4, 3, 2)


def test_pullback_commutes_with_coboundary(rng):
    for _ in range(200):
        first, second = random_homomorphism_chain(rng)
        for h in (first, second):
            f = random_vertex_form(h.target, rng)
            assert pullback_edge(h, coboundary(h.target, f)) == coboundary(h.source, pullback_vertex(h, f))


def test_pullback_is_contravariant(rng):
    for _ in range(200):
        first, second = random_homomorphism_chain(rng)
        composite = compose(second, first)
        for degree in (0, 1):
            assert pullback_matrix(composite, degree) == pullback_matrix(first, degree) @ pullback_matrix(second, degree)


def test_pushforward_is_dual_to_pullback(rng):
    for _ in range(50):
        h, _ = random_homomorphism_chain(rng)
        omega = random_edge_form(h.target, rng)
        f = random_vertex_form(h.target, rng)
        edge_chain = ChainVector(h.source, 1, tuple(rng.randint(-3, 3) for _ in range(h.source.edge_count)))
        vertex_chain = ChainVector(h.source, 0, tuple(rng.randint(-3, 3) for _ in range(h.source.vertex_count)))
        assert _pair(pullback_edge(h, omega), edge_chain) == _pair(omega, pushforward(h, edge_chain))
        assert _pair(pullback_vertex(h, f), vertex_chain) == _pair(f, pushforward(h, vertex_chain))


def test_induced_maps_are_functorial(rng):
    for _ in range(50):
        first, second = random_homomorphism_chain(rng, 6)
        composite = compose(second, first)
        for degree in (0, 1):
            assert induced_cohomology_map(composite, degree) == (
                induced_cohomology_map(first, degree) @ induced_cohomology_map(second, degree)
            )


def test_isomorphism_iff_invertible_pullback(rng):
    for _ in range(100):
        g = random_orientation(random_graph(rng, 8, 14), rng)
        iso = random_isomorphism(g, rng)
        assert iso.is_isomorphism()
        assert _invertible(form_pullback_matrix(iso))
        for degree in (0, 1):
            assert _invertible(induced_cohomology_map(iso, degree))

        h, _ = random_homomorphism_chain(rng)
        assert _invertible(form_pullback_matrix(h)) == h.is_isomorphism()


def test_automorphisms_induce_invertible_maps():
    g = lollipop_graph(4, 2)
    for p in automorphism_group(g).elements:
        for degree in (0, 1):
            assert _invertible(induced_cohomology_map(p.as_homomorphism(g), degree))


def test_inclusion_of_cycle_retract_is_isomorphism_on_cohomology():
    g = lollipop_graph(3, 2)
    inclusion = inclusion_homomorphism(cycle_forest(g).cycle_retract)
    for degree in (0, 1):
        assert _invertible(induced_cohomology_map(inclusion, degree))


def test_tree_fold_has_empty_degree_one_map():
    tree = path_graph(4)
    fold = GraphHomomorphism(tree, path_graph(2), (0, 1, 0, 1))
    m = induced_cohomology_map(fold, 1)
    assert m.shape == (0, 0)
    assert m.is_zero()
    assert induced_cohomology_map(fold, 0).shape == (1, 1)


def test_compose_checks_domains():
    a = identity_homomorphism(cycle_graph(3))
    b = identity_homomorphism(cycle_graph(4))
    with pytest.raises(ValueError):
        compose(a, b)
