from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grestrict.cosetgraph import (CosetGraphError, build_coset_graph, check_local_op, check_thompson_wielandt,
                                  graph_from_action, is_arc_transitive, is_connected, is_locally, local_pair,
                                  parse_adjacency_text, to_adjacency_text, to_edge_list_text)
from grestrict.graph_fixtures import FIXTURES, NEGATIVE_FIXTURES, fixture_graph, sabidussi_k4
from grestrict.group import PermutationGroup
from grestrict.props import is_semiprimitive

from conftest import group
from oracles import closure, orbit_of

S4 = "(1 2 3 4);(1 2)"


@pytest.fixture(scope="module")
def graphs():
    return {name: fixture_graph(name) for name in FIXTURES}


def test_k4_instance():
    gr = sabidussi_k4()
    assert gr.order == 4 and gr.valency == 3 and len(gr.edges) == 6
    la = local_pair(gr)
    assert la.local_group.order() == 6 and is_locally(gr, group("(1 2);(1 2 3)"))
    assert not is_locally(gr, group("(1 2 3)"))
    assert la.kernel_v.order() == 1
    assert la.arc_stabilizer.order() == 2 and la.edge_stabilizer.order() == 4


def test_triangle_from_sym3():
    gr = build_coset_graph(group("(1 2 3);(1 2)"), group("(1 2)", 3), (0, 2, 1))
    assert gr.order == 3 and gr.valency == 2 and is_connected(gr)


def test_named_precondition_failures():
    D4 = group("(1 2 3 4);(1 3)")
    with pytest.raises(CosetGraphError) as err:
        build_coset_graph(D4, group("(1 3)(2 4)", 4), (1, 2, 3, 0))  # A is the centre
    assert err.value.failed == ["generates", "core-free"]
    with pytest.raises(CosetGraphError) as err:
        build_coset_graph(group(S4), group("(1 2 3);(1 2)", 4), (1, 0, 2, 3))
    assert "b-not-in-A" in err.value.failed
    with pytest.raises(CosetGraphError) as err:
        build_coset_graph(group("(1 2 3)", 4), group("(1 2)", 4), (1, 0, 2, 3))
    assert err.value.failed == ["A-subgroup-of-G"]


def test_fixture_corpus_size():
    assert len(FIXTURES) >= 10


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_local_structure(graphs, name):
    gr = graphs[name]
    la = local_pair(gr)  # also cross-checks the restriction against the coset action
    assert la.isomorphism is not None
    assert gr.order * gr.A.order() == gr.G.order()
    assert 2 * len(gr.edges) == gr.order * gr.valency
    assert is_connected(gr) and is_arc_transitive(gr)
    assert la.vertex_stabilizer.order() == la.local_group.order() * la.kernel_v.order()
    assert la.edge_stabilizer.order() == 2 * la.arc_stabilizer.order()
    assert is_semiprimitive(la.local_group)
    assert check_thompson_wielandt(gr, la).status == "holds"
    assert check_local_op(gr, la).ok


def test_local_op_applies_on_nontrivial_kernels(graphs):
    seen = {}
    for name in ("heawood", "PG(2,3)-incidence", "tutte-8-cage"):
        la = local_pair(graphs[name])
        check = check_local_op(graphs[name], la)
        assert check.status == "holds"
        seen[name] = la.kernel_uv.order()
    assert seen == {"heawood": 2, "PG(2,3)-incidence": 3, "tutte-8-cage": 4}


def test_negative_control_has_mixed_kernel():
    gr = fixture_graph("C5[3K1]")
    la = local_pair(gr)
    assert not is_semiprimitive(la.local_group)
    assert la.kernel_uv.order() == 6
    tw = check_thompson_wielandt(gr, la)
    assert tw.status == "not-applicable" and check_local_op(gr, la).status == "not-applicable"
    assert set(NEGATIVE_FIXTURES) == {"C5[3K1]"}


def test_vertices_are_brute_force_cosets(graphs):
    gr = graphs["petersen"]
    G = set(closure(gr.G.gens, gr.G.degree))
    A = set(closure(gr.A.gens, gr.G.degree))
    cosets = {frozenset(tuple(g[a[i]] for i in range(len(g))) for a in A) for g in G}
    assert len(cosets) == gr.order == 10
    # the neighbourhood of the base vertex matches the A-orbit of the partner
    assert sorted(orbit_of(gr.partner, closure(gr.action.stabilizer0(0).gens, gr.order))) == gr.neighbours(0)


def test_export_round_trip(graphs):
    gr = graphs["cube"]
    text = to_adjacency_text(gr)
    assert text.splitlines()[0].startswith("0: ")
    assert parse_adjacency_text(text) == gr.adjacency
    edges = [tuple(map(int, ln.split())) for ln in to_edge_list_text(gr).splitlines()]
    assert edges == gr.edges and len(edges) == 12


def test_graph_from_action_checks_simplicity():
    C4 = group("(1 2 3 4)")
    gr = graph_from_action(C4, [[1, 3], [0, 2], [1, 3], [0, 2]])
    assert gr.valency == 2 and not is_arc_transitive(gr)
    assert is_arc_transitive(graph_from_action(group("(1 2 3 4);(1 3)"), gr.adjacency))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=3, max_value=11))
def test_cycle_graphs_from_dihedral_groups(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    G = PermutationGroup([rot, ref], n)
    b = tuple((1 - i) % n for i in range(n))  # reflection swapping 0 and 1
    gr = build_coset_graph(G, G.stabilizer0(0), b)
    assert gr.order == n and gr.valency == 2 and len(gr.edges) == n
    la = local_pair(gr)
    assert la.arc_stabilizer.order() == 1 and la.kernel_v.order() == 1
