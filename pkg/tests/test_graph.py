import pytest

from dompoly.families import complete, cycle, path, star
from dompoly.graph import (EMPTY, Graph, GraphError, build_graph, closed_neighborhood,
                           components, contract_vertex, delete_closed_neighborhood,
                           delete_vertices, find_dominated_pair, format_edge_list,
                           graph_digest, is_regular, is_tree, min_degree, parse_edge_list)


def test_build_dedupes_and_validates():
    G = build_graph(3, [(0, 1), (1, 0), (1, 2)])
    assert G.m == 2 and G.edges() == [(0, 1), (1, 2)]
    with pytest.raises(GraphError, match=r"\(0, 0\)"):
        build_graph(2, [(0, 0)])
    with pytest.raises(GraphError, match=r"\(0, 5\)"):
        build_graph(3, [(0, 5)])


def test_asymmetric_adjacency_rejected():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))


def test_neighbourhoods():
    G = path(4)
    assert G.neighbors(1) == frozenset({0, 2})
    assert closed_neighborhood(G, 0) == frozenset({0, 1})
    with pytest.raises(GraphError):
        G.neighbors(9)


def test_delete_and_contract():
    H, index = delete_vertices(path(4), [1])
    assert H.n == 3 and H.edges() == [(1, 2)] and index == {0: 0, 2: 1, 3: 2}
    C = contract_vertex(star(4), 0)
    assert C.n == 3 and C.m == 3
    iso = build_graph(3, [(0, 1)])
    assert contract_vertex(iso, 2) == delete_vertices(iso, [2])[0]
    assert delete_closed_neighborhood(path(5), 2).edges() == []


def test_degree_helpers():
    assert min_degree(cycle(5)) == 2
    assert is_regular(complete(4)) == 3
    assert is_regular(path(3)) is None
    with pytest.raises(GraphError):
        min_degree(EMPTY)


def test_dominated_pair():
    assert find_dominated_pair(path(3)) == (0, 1)
    assert find_dominated_pair(cycle(5)) is None


def test_components_and_trees():
    G = build_graph(5, [(0, 1), (3, 4)])
    assert components(G) == [[0, 1], [2], [3, 4]]
    assert is_tree(path(5)) and not is_tree(G) and not is_tree(cycle(4))


def test_edge_list_roundtrip():
    G = cycle(5)
    assert parse_edge_list(format_edge_list(G)) == G
    text = "# comment\n3 2\n\n0 1\n1 2\n"
    assert parse_edge_list(text) == path(3)


@pytest.mark.parametrize("text", ["", "3 2\n0 1\n", "2 1\n0 x\n", "2 1\n0 0\n", "2 1\n0 1 2\n"])
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_digest_is_stable():
    assert graph_digest(path(4)) == graph_digest(build_graph(4, [(2, 3), (1, 2), (0, 1)]))
    assert graph_digest(path(4)) != graph_digest(star(4))
