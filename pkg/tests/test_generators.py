import networkx as nx
import pytest

from src.graph_derham.aut_action import canonical_form
from src.graph_derham.generators import (
    connected_graphs,
    cycle_graph,
    lollipop_graph,
    path_graph,
    random_cored_graph,
    random_cover,
    random_disconnected_graph,
    random_graph,
    random_homomorphism_chain,
    star_graph,
    theta_graph,
)
from src.graph_derham.graph_core import betti_numbers, is_connected
from src.graph_derham.mayer_vietoris import validate_cover


def test_named_graphs():
    assert cycle_graph(3).edges == ((0, 1), (0, 2), (1, 2))
    assert path_graph(1).edge_count == 0
    assert star_graph(3).edges == ((0, 1), (0, 2), (0, 3))
    assert lollipop_graph().edges == ((0, 1), (0, 2), (1, 2), (2, 3), (3, 4))
    theta = theta_graph()
    assert (theta.vertex_count, theta.edge_count) == (5, 6)
    assert betti_numbers(theta_graph(2, 0, 3)) == (1, 2)
    with pytest.raises(ValueError):
        cycle_graph(2)
    with pytest.raises(ValueError):
        path_graph(0)
    with pytest.raises(ValueError):
        theta_graph(0, 0, 1)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_graph_counts(n, expected):
    graphs = connected_graphs(n)
    assert len(graphs) == expected
    assert all(is_connected(g) and g.vertex_count == n for g in graphs)
    assert len({canonical_form(g) for g in graphs}) == expected


def test_connected_graphs_against_networkx_atlas():
    for n in range(1, 7):
        atlas = [
            g for g in nx.graph_atlas_g()
            if g.number_of_nodes() == n and nx.is_connected(g)
        ]
        assert len(connected_graphs(n)) == len(atlas)


@pytest.mark.slow
@pytest.mark.parametrize("n, expected", [(7, 853), (8, 11117)])
def test_connected_graph_counts_slow(n, expected):
    assert len(connected_graphs(n)) == expected


def test_random_graph_bounds(rng):
    for _ in range(50):
        g = random_graph(rng, 9, 12, min_vertices=2)
        assert 2 <= g.vertex_count <= 9
        assert g.edge_count <= 12


def test_random_cored_graph(rng):
    for _ in range(30):
        g = random_cored_graph(rng, 12)
        assert is_connected(g)
        assert betti_numbers(g)[1] >= 2
        assert g.vertex_count <= 12
    with pytest.raises(ValueError):
        random_cored_graph(rng, 3)


def test_random_disconnected_graph(rng):
    for _ in range(30):
        assert betti_numbers(random_disconnected_graph(rng))[0] >= 2


def test_random_cover(rng):
    for _ in range(50):
        g = random_graph(rng, 10, 18)
        a, b = random_cover(g, rng)
        validate_cover(g, a, b)


def test_random_homomorphism_chain(rng):
    for _ in range(50):
        first, second = random_homomorphism_chain(rng)
        assert first.target == second.source
