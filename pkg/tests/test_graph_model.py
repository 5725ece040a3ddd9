import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexgraph.graph_model import (
    Digraph,
    DuplicateEdgeError,
    EndpointRangeError,
    Graph,
    Hypergraph,
    MalformedHeaderError,
    MalformedLineError,
    MappingError,
    SelfLoopError,
    VertexMapping,
    apply_vertex_permutation,
    parse_any,
    parse_graph,
    serialize_graph,
)

from conftest import complete, graph_and_perm, graphs, path, star


def test_parse_path():
    assert parse_graph("3 2\n0 1\n1 2") == Graph(3, ((0, 1), (1, 2)))


def test_parse_edgeless():
    g = parse_graph("2 0")
    assert g.n == 2 and g.edges == ()


def test_parse_canonicalizes_order():
    g = parse_graph("3 2\n2 1\n1 0\n")
    assert g.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text, exc",
    [
        ("3 1\n2 2", SelfLoopError),
        ("3 2\n0 1\n1 0", DuplicateEdgeError),
        ("3 1\n0 3", EndpointRangeError),
        ("3 1\n-1 2", EndpointRangeError),
        ("3", MalformedHeaderError),
        ("x 1\n0 1", MalformedHeaderError),
        ("3 2\n0 1", MalformedHeaderError),
        ("3 1\n0 1 2", MalformedLineError),
        ("3 1\n0 a", MalformedLineError),
        ("", MalformedHeaderError),
        ("3 1 q\n0 1", MalformedHeaderError),
    ],
)
def test_parse_errors_are_distinct(text, exc):
    with pytest.raises(exc):
        parse_graph(text)


@pytest.mark.parametrize(
    "g, text",
    [
        (Graph(3, ((0, 1), (1, 2))), "3 2\n0 1\n1 2\n"),
        (Graph(1), "1 0\n"),
        (Graph(4, ((0, 1), (0, 2), (0, 3))), "4 3\n0 1\n0 2\n0 3\n"),
    ],
)
def test_serialize(g, text):
    assert serialize_graph(g) == text


def test_digraph_and_hypergraph_round_trip():
    d = Digraph(3, ((1, 0), (0, 2)))
    assert d.arcs == ((0, 2), (1, 0))
    assert parse_any(serialize_graph(d)) == d
    h = Hypergraph(4, ((2, 1, 0), (3, 1)))
    assert h.hyperedges == ((0, 1, 2), (1, 3))
    assert serialize_graph(h) == "4 2 h\n3 0 1 2\n2 1 3\n"
    assert parse_any(serialize_graph(h)) == h


def test_digraph_allows_both_directions_but_not_repeats():
    Digraph(2, ((0, 1), (1, 0)))
    with pytest.raises(DuplicateEdgeError):
        Digraph(2, ((0, 1), (0, 1)))


def test_hypergraph_rejects_small_and_duplicate_edges():
    with pytest.raises(MalformedLineError):
        Hypergraph(3, ((1, 1),))
    with pytest.raises(DuplicateEdgeError):
        Hypergraph(3, ((0, 1, 2), (2, 1, 0)))


@settings(max_examples=200)
@given(graphs(max_n=9))
def test_round_trip_idempotent(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_permute_path_is_symmetric():
    assert apply_vertex_permutation(path(3), (2, 1, 0)) == path(3)


def test_permute_triangle_invariant():
    for pi in [(1, 2, 0), (0, 2, 1), (2, 0, 1)]:
        assert apply_vertex_permutation(complete(3), pi) == complete(3)


def test_permute_star_rotation():
    g = apply_vertex_permutation(star(4), (1, 2, 3, 0))
    assert g.edges == ((0, 1), (1, 2), (1, 3))


@pytest.mark.parametrize("pi", [(0, 0, 1), (0, 1), (0, 1, 3)])
def test_permute_rejects_non_bijection(pi):
    with pytest.raises(MappingError):
        apply_vertex_permutation(path(3), pi)


@given(graph_and_perm())
def test_permutation_preserves_sizes(gp):
    g, pi = gp
    h = apply_vertex_permutation(g, pi)
    assert (h.n, h.m) == (g.n, g.m)
    assert apply_vertex_permutation(g, range(g.n)) == g


@given(graph_and_perm(), st.data())
def test_permutation_composition(gp, data):
    g, p = gp
    q = tuple(data.draw(st.permutations(range(g.n))))
    composed = VertexMapping(q).compose(VertexMapping(p))
    assert apply_vertex_permutation(apply_vertex_permutation(g, p), q) == apply_vertex_permutation(g, composed)


def test_adjacency_and_degrees():
    g = star(4)
    assert g.degrees().tolist() == [3, 1, 1, 1]
    a = g.adjacency()
    assert (a == a.T).all() and a.sum() == 6


def test_complement_twice_is_identity():
    g = Graph(5, ((0, 1), (2, 4)))
    assert g.complement().complement() == g
    assert g.complement().m == 10 - 2
