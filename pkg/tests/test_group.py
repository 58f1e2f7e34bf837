from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from grestrict.config import ENV_VAR, max_order
from grestrict.errors import ResourceLimitError
from grestrict.group import PermutationGroup, StabChain, group_order, orbits, point_stabilizer

from conftest import group
from oracles import closure, lex_min_coset

ORDERS = json.loads((Path(__file__).parent / "data" / "catalog_orders.json").read_text())


def gen_sets(max_n: int = 7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.permutations(list(range(n))).map(tuple), min_size=0, max_size=3).map(lambda g: (n, g))
    )


def test_orders_examples():
    assert group_order(group("(1 2);(1 2 3)")) == 6
    assert group("(1 2 3 4);(1 3)").order() == 8
    assert PermutationGroup([], 3).order() == 1


def test_orbits_examples():
    assert orbits(group("(1 2 3 4)")) == [(1, 2, 3, 4)]
    assert orbits(group("(1 3);(2 4)", 4)) == [(1, 3), (2, 4)]
    assert orbits(PermutationGroup([], 3)) == [(1,), (2,), (3,)]


def test_point_stabilizers_examples():
    S3 = group("(1 2);(1 2 3)")
    st1 = point_stabilizer(S3, 1)
    assert st1.order() == 2 and st1.contains(group("(2 3)", 3).gens[0])
    assert point_stabilizer(group("(1 2 3 4)"), 1).is_trivial()
    D4 = group("(1 2 3 4);(1 3)")
    assert point_stabilizer(D4, 1) == group("(2 4)", 4)


def test_catalog_orders_match_stored_orders(catalog):
    assert len(catalog) == len(ORDERS) == 483
    for rec in catalog:
        assert rec.group.order() == ORDERS[rec.label], rec.label


def test_chain_order_matches_closure_on_catalog(catalog):
    for rec in catalog:
        G = rec.group
        if G.order() > 5000:
            continue
        elems = closure(G.gens, G.degree)
        assert len(elems) == G.order(), rec.label
        assert set(G.elements()) == elems, rec.label


@settings(max_examples=60, deadline=None)
@given(gen_sets())
def test_order_and_membership_match_closure(data):
    n, gens = data
    G = PermutationGroup(gens, n)
    elems = closure(gens, n)
    assert G.order() == len(elems)
    for x in list(elems)[:30]:
        assert G.contains(x)
    if len(elems) < 120 and n >= 2:
        # an element of the full symmetric group outside G
        from itertools import permutations

        outside = next((p for p in permutations(range(n)) if p not in elems), None)
        if outside is not None:
            assert not G.contains(outside)


@settings(max_examples=40, deadline=None)
@given(gen_sets())
def test_orbit_stabilizer(data):
    n, gens = data
    G = PermutationGroup(gens, n)
    for x in range(1, n + 1):
        assert G.order() == len(G.orbit(x)) * G.stabilizer(x).order()


@settings(max_examples=40, deadline=None)
@given(gen_sets(6), st.permutations(list(range(6))))
def test_coset_min_is_least_element_of_coset(data, g):
    n, gens = data
    if n != 6:
        return
    H = PermutationGroup(gens, n)
    assert H.chain().coset_min(tuple(g)) == lex_min_coset(closure(gens, n), tuple(g))


def test_base_order_does_not_change_order():
    G = group("(1 2 3 4 5 6 7);(1 2)")
    assert StabChain(7, G.gens, [6, 3, 1]).order() == 5040


def test_iter_elements_is_complete():
    G = group("(1 2 3 4 5);(1 2)")
    assert sorted(G.iter_elements()) == sorted(G.elements())


def test_resource_bound_from_environment(monkeypatch):
    monkeypatch.setenv(ENV_VAR, "100")
    assert max_order() == 100
    with pytest.raises(ResourceLimitError) as err:
        group("(1 2 3 4 5);(1 2)").elements()
    assert err.value.bound == 100


def test_subgroup_and_equality():
    S4 = group("(1 2 3 4);(1 2)")
    A4 = group("(1 2 3);(2 3 4)", 4)
    assert A4.is_subgroup_of(S4) and A4.is_normal_in(S4)
    assert group("(1 2 3 4);(1 2 3 4 5)", 5).order() == 120
    assert S4 == group("(1 2);(2 3);(3 4)", 4)
