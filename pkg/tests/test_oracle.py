import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from feiso.generators import all_graphs, complete_graph, cycle_graph, path_graph
from feiso.graph import Graph, Permutation, apply_permutation
from feiso.nutcracker import verify_correspondence
from feiso.oracle import OracleSizeError, brute_force_isomorphism, exact_canonical_form

from conftest import graphs, graphs_with_permutation


def test_iso_examples():
    k3 = complete_graph(3)
    p = brute_force_isomorphism(k3, k3)
    assert p is not None and verify_correspondence(k3, k3, p)
    assert brute_force_isomorphism(complete_graph(2), Graph(2)) is None
    c5 = cycle_graph(5)
    h = apply_permutation(c5, Permutation((3, 0, 4, 1, 2)))
    assert verify_correspondence(c5, h, brute_force_isomorphism(c5, h))


def test_iso_size_cap():
    with pytest.raises(OracleSizeError):
        brute_force_isomorphism(Graph(11), Graph(11))
    assert brute_force_isomorphism(Graph(3), Graph(4)) is None


@settings(max_examples=60, deadline=None)
@given(graphs_with_permutation(min_n=0, max_n=9))
def test_iso_finds_witness(gp):
    g, p = gp
    h = apply_permutation(g, p)
    assert verify_correspondence(g, h, brute_force_isomorphism(g, h))


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=7))
def test_iso_agrees_with_networkx(a, b):
    def to_nx(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        return h

    assert (brute_force_isomorphism(a, b) is not None) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_form_examples():
    p3 = path_graph(3)
    forms = {exact_canonical_form(apply_permutation(p3, Permutation(m))) for m in itertools.permutations(range(3))}
    assert len(forms) == 1
    assert exact_canonical_form(p3) != exact_canonical_form(complete_graph(3))
    assert exact_canonical_form(Graph(1)).bits == ""
    # the least string puts the absent edge first
    assert exact_canonical_form(p3).bits == "011"


def test_canonical_form_size_cap():
    with pytest.raises(OracleSizeError):
        exact_canonical_form(Graph(9))


@settings(max_examples=40, deadline=None)
@given(graphs_with_permutation(min_n=1, max_n=7))
def test_canonical_form_relabeling_invariant(gp):
    g, p = gp
    assert exact_canonical_form(g) == exact_canonical_form(apply_permutation(g, p))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
def test_canonical_form_decides_isomorphism(a, b):
    same = exact_canonical_form(a) == exact_canonical_form(b)
    assert same == (brute_force_isomorphism(a, b) is not None)


@pytest.mark.parametrize("n, classes", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
def test_connected_class_counts(n, classes):
    # OEIS A001349: 1, 1, 2, 6, 21, 112, ...
    forms = {exact_canonical_form(g) for g in all_graphs(n) if g.is_connected()}
    assert len(forms) == classes
