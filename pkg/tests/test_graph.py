import json

import pytest

from rainbow_kit.graph import Graph, GraphError, load_graph


def test_edges_are_normalised_in_input_order():
    g = Graph(4, [(2, 1), (0, 3), (1, 0)])
    assert g.edges == ((1, 2), (0, 3), (0, 1))
    assert g.edge_id(2, 1) == 0 and g.edge_id(1, 0) == 2
    assert g.adj[1] == (0, 2)
    assert g.degree(0) == 2 and g.m == 3


@pytest.mark.parametrize("edges,msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 5)], "outside"),
])
def test_invalid_edges_are_named(edges, msg):
    with pytest.raises(GraphError, match=msg):
        Graph(3, edges)


def test_json_round_trip_and_text(tmp_path):
    g = Graph(5, [(0, 1), (1, 2), (3, 4), (0, 4)])
    assert Graph.from_json(g.to_json()) == g
    p = tmp_path / "g.json"
    p.write_text(g.to_json())
    assert load_graph(str(p)) == g
    t = tmp_path / "g.txt"
    t.write_text("# a comment\n0 1\n1 2\n3 4\n0 4\n")
    assert load_graph(str(t)) == g
    assert json.loads(g.to_json())["n"] == 5


def test_induced_subgraph_maps_ids():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
    sub, old_of_new, emap = g.induced([1, 2, 3])
    assert sub.n == 3 and old_of_new == [1, 2, 3]
    assert sorted(g.edges[e] for e in emap) == [(1, 2), (1, 3), (2, 3)]
    for i, (a, b) in enumerate(sub.edges):
        assert g.edges[emap[i]] == (old_of_new[a], old_of_new[b])


def test_csr_matches_adjacency():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    indptr, nbr, eid = g.csr
    for v in g.vertices():
        got = sorted(zip(nbr[indptr[v]:indptr[v + 1]], eid[indptr[v]:indptr[v + 1]]))
        assert got == sorted(g.incident(v))


def test_complete_detection():
    assert Graph(3, [(0, 1), (1, 2), (0, 2)]).is_complete()
    assert not Graph(3, [(0, 1), (1, 2)]).is_complete()
