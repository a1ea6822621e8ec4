import itertools

import networkx as nx
import pytest
from hypothesis import given

from splitcomp import oracle
from splitcomp.graph_core import Graph, ObstructionKind

from conftest import complete, cycle, graphs, matching

K = ObstructionKind


@pytest.mark.parametrize("g,expected", [
    (Graph(6), 0),
    (cycle(4), 1),
    (cycle(5), 2),
    (matching(2), 1),
    (complete(5), 0),
])
def test_brute_splittance_examples(g, expected):
    assert oracle.brute_splittance(g) == expected


def test_brute_splittance_cap():
    with pytest.raises(oracle.TooLarge):
        oracle.brute_splittance(Graph(oracle.MAX_SPLITTANCE_N + 1))


def test_brute_obstructions_examples():
    assert oracle.brute_obstructions(complete(6)) == []
    c5 = oracle.brute_obstructions(cycle(5))
    assert [f.kind for f in c5] == [K.C5]
    found = oracle.brute_obstructions(matching(3))
    assert len(found) == 3 and all(f.kind is K.TWO_K2 for f in found)


def test_brute_completion_examples():
    assert oracle.brute_completion(matching(2), 1).decision
    assert not oracle.brute_completion(matching(3), 1).decision
    # insertions alone need a triangle through one endpoint of each edge
    assert not oracle.brute_completion(matching(3), 2).decision
    ans = oracle.brute_completion(matching(3), 3)
    assert ans.decision and len(ans.witness) == 3
    g = matching(3)
    for u, v in ans.witness:
        assert not g.has_edge(u, v)
        g.toggle_edge(u, v)
    assert oracle.brute_splittance(g) == 0


def test_brute_deletion_examples():
    assert oracle.brute_deletion(cycle(4), 1).decision
    assert oracle.brute_deletion(complete(4), 0).decision


@given(graphs(max_n=9))
def test_degree_formula_matches_partition_minimum(g):
    assert oracle.degree_splittance(g) == oracle.brute_splittance(g)


@given(graphs(max_n=8))
def test_obstruction_free_iff_split(g):
    split = oracle.brute_splittance(g) == 0
    assert (oracle.brute_obstructions(g) == []) == split
    assert (oracle.any_obstruction(g) is None) == split


@given(graphs(min_n=4, max_n=9))
def test_any_obstruction_is_induced(g):
    found = oracle.any_obstruction(g)
    if found is not None:
        assert g.induces(found.vertices, found.kind)


@given(graphs(max_n=8))
def test_split_agrees_with_networkx_degree_test(g):
    # networkx has no split test; use the chordal and co-chordal characterization
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    split = nx.is_chordal(h) and nx.is_chordal(nx.complement(h))
    assert split == (oracle.brute_splittance(g) == 0)


@given(graphs(max_n=6))
def test_brute_completion_witness_is_valid(g):
    for k in range(3):
        ans = oracle.brute_completion(g, k)
        if ans.decision:
            h = g.copy()
            for u, v in ans.witness:
                assert not h.has_edge(u, v)
                h.toggle_edge(u, v)
            assert len(ans.witness) <= k
            assert oracle.brute_splittance(h) == 0


def test_partition_splittance_counts_both_sides():
    g = Graph.from_edges(5, [(1, 2), (4, 5)])
    assert oracle.partition_splittance(g, {1, 2, 3}) == 2 + 1
    assert min(oracle.partition_splittance(g, A)
               for r in range(6) for A in itertools.combinations(range(1, 6), r)) == 1
