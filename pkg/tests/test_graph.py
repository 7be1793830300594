from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corpus import all_graphs
from repdim.errors import InapplicableError
from repdim.graph import (
    Graph,
    bipartite_component_count,
    classify_clique_union,
    complement,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty,
    line_graph,
    path,
    petersen,
    regularity,
)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def sorted_spectrum(g):
    return np.sort(np.linalg.eigvalsh(g.adjacency_matrix()))


def has_induced_p3(g):
    a = g.adj
    return any(int(a[u, v]) + int(a[v, w]) + int(a[u, w]) == 2 for u, v, w in combinations(range(g.n), 3))


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


def test_graph_is_immutable():
    g = path(3)
    with pytest.raises(ValueError):
        g.adj[0, 2] = True


def test_complement_examples():
    assert complement(complete(3)) == empty(3)
    assert complement(path(3)) == Graph.from_edges(3, [(0, 2)])
    assert np.allclose(sorted_spectrum(complement(cycle(5))), sorted_spectrum(cycle(5)))


def test_generators():
    c4 = cycle(4)
    assert c4.num_edges == 4 and regularity(c4) == 2
    p = petersen()
    assert p.n == 10 and p.num_edges == 15 and regularity(p) == 3
    two_triangles = disjoint_union([complete(3), complete(3)])
    assert two_triangles.n == 6 and two_triangles.num_edges == 6
    assert not two_triangles.adj[2, 3]
    with pytest.raises(ValueError):
        cycle(2)


def test_petersen_is_srg_10_3_0_1():
    a = petersen().adjacency_matrix()
    common = a @ a
    iu = np.triu_indices(10, 1)
    assert set(common[iu][a[iu] == 1]) == {0.0}
    assert set(common[iu][a[iu] == 0]) == {1.0}


def test_line_graph_examples():
    assert line_graph(complete(3)) == complete(3)
    assert line_graph(path(3)) == complete(2)
    lk4 = line_graph(complete(4))
    assert lk4.n == 6 and regularity(lk4) == 4
    assert np.allclose(sorted_spectrum(lk4), sorted_spectrum(complete_multipartite([2, 2, 2])))
    with pytest.raises(InapplicableError):
        line_graph(empty(3))


def test_line_graph_vertex_order_is_lexicographic():
    g = Graph.from_edges(4, [(2, 3), (0, 1), (1, 2)])
    lg = line_graph(g)
    # edges in order (0,1), (1,2), (2,3): a path
    assert lg == path(3)


def test_classify_clique_union_examples():
    info = classify_clique_union(disjoint_union([complete(3), complete(3)]))
    assert info.is_clique_union and info.component_sizes == (3, 3) and info.r == 2
    info = classify_clique_union(disjoint_union([complete(3), complete(2)]))
    assert info.component_sizes == (3, 2) and info.r == 1
    assert classify_clique_union(cycle(4)) is None
    assert classify_clique_union(empty(3)).component_sizes == (1, 1, 1)


def test_regularity_and_bipartite_counts():
    assert regularity(petersen()) == 3
    assert regularity(path(4)) is None
    assert bipartite_component_count(cycle(6)) == 1
    g = disjoint_union([complete(2), complete(2), cycle(5)])
    assert bipartite_component_count(g) == 2
    assert bipartite_component_count(empty(3)) == 3


@given(graphs())
def test_complement_is_involutive(g):
    assert complement(complement(g)) == g


@pytest.mark.parametrize("n", range(1, 7))
def test_clique_union_iff_no_induced_p3_exhaustive(n):
    for g in all_graphs(n):
        assert (classify_clique_union(g) is not None) == (not has_induced_p3(g))


@settings(max_examples=150)
@given(graphs(max_n=7))
def test_clique_union_iff_no_induced_p3_random(g):
    assert (classify_clique_union(g) is not None) == (not has_induced_p3(g))


@given(graphs())
def test_line_graph_edge_count(g):
    if g.num_edges == 0:
        return
    expected = sum(int(d) * (int(d) - 1) // 2 for d in g.degrees())
    assert line_graph(g).num_edges == expected
