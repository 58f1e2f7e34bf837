from __future__ import annotations

from itertools import combinations

import pytest

from grestrict.errors import InputError
from grestrict.group import PermutationGroup
from grestrict.props import (affine_type, block_systems, is_biquasiprimitive, is_primitive, is_quasiprimitive,
                             is_regular, is_semiprimitive, is_semiregular, is_two_transitive, local_action,
                             permutation_isomorphic, permutation_isomorphism, property_report,
                             semiprimitive_witness, semiregular_witness)

from conftest import group
from oracles import closure, is_semiprimitive_brute, permutation_isomorphic_brute

S3 = "(1 2);(1 2 3)"
D4 = "(1 2 3 4);(1 3)"
C4 = "(1 2 3 4)"
F21 = "(1 2 3 4 5 6 7);(2 3 5)(4 7 6)"


def test_semiregular_examples():
    assert is_semiregular(group("(1 2)(3 4)"))
    N = group("(1 3);(2 4)", 4)
    assert not is_semiregular(N)
    w = semiregular_witness(N)
    assert str(w.element) == "(1 3)" and w.fixed_point == 2
    assert is_semiregular(PermutationGroup([], 3))


def test_semiprimitive_examples():
    assert is_semiprimitive(group(S3))
    assert is_semiprimitive(group(C4))
    assert semiprimitive_witness(group(D4)) == group("(1 3);(2 4)", 4)


def test_semiprimitive_needs_transitive():
    with pytest.raises(InputError):
        is_semiprimitive(group("(1 2)", 4))


def test_block_system_examples():
    assert block_systems(group(S3)) == []
    assert [(1, 3), (2, 4)] in block_systems(group(D4))
    assert [(1, 3), (2, 4)] in block_systems(group(C4))


def test_two_transitive_examples():
    assert is_two_transitive(group(S3))
    assert not is_two_transitive(group(D4))
    F = group(F21)
    assert not is_two_transitive(F)
    assert sorted(len(o) for o in F.stabilizer(1).orbits()) == [1, 3, 3]
    with pytest.raises(InputError):
        is_two_transitive(PermutationGroup([], 1))


def test_quasiprimitive_examples():
    assert is_quasiprimitive(group(S3))
    assert not is_quasiprimitive(group(C4)) and is_biquasiprimitive(group(C4))
    assert not is_quasiprimitive(group(D4))


def test_permutation_isomorphism_examples():
    G = group(D4)
    assert permutation_isomorphism(G, G) == [1, 2, 3, 4]
    assert not permutation_isomorphic(group(C4), group("(1 2)(3 4);(1 3)(2 4)"))
    assert permutation_isomorphic(group("(1 2 3)"), group("(1 3 2)"))


def test_local_action_examples():
    S4 = group("(1 2 3 4);(1 2)")
    image, kernel = local_action(S4, S4.stabilizer(4), [1, 2, 3])
    assert image.order() == 6 and image.degree == 3 and kernel.is_trivial()
    stab = group("(1 2)", 4)
    image, kernel = local_action(group("(1 2)", 4), stab, [3, 4])
    assert image.is_trivial() and kernel == stab
    # D4 on the 4-cycle 1-2-3-4: vertex 1 has neighbours 2 and 4
    Dv = group(D4).stabilizer(1)
    image, _ = local_action(group(D4), Dv, [2, 4])
    assert image.order() == 2
    with pytest.raises(InputError):
        local_action(group(D4), Dv, [2, 3])


def test_primitive_iff_no_block_systems(catalog):
    for rec in catalog:
        if rec.degree > 10:
            break
        G = rec.group
        brute = not any(_is_block(G, set(b)) for b in _pairs_closure_candidates(G))
        assert is_primitive(G) == brute, rec.label


def _is_block(G, blk):
    return all({g[x] for x in blk} == blk or not ({g[x] for x in blk} & blk) for g in G.gens)


def _pairs_closure_candidates(G):
    # brute force: the smallest block through {0, b} for every b, by saturation
    n = G.degree
    elems = closure(G.gens, n) if G.order() <= 5000 else None
    for b in range(1, n):
        blk = {0, b}
        changed = True
        while changed:
            changed = False
            for g in (elems or G.gens):
                img = {g[x] for x in blk}
                if img & blk and img != blk:
                    blk |= img
                    changed = True
        if len(blk) < n:
            yield blk


def test_property_implications(catalog):
    for rec in catalog:
        if rec.degree > 10:
            break
        r = property_report(rec.group, with_affine=False)
        if r.two_transitive:
            assert r.primitive
        if r.primitive:
            assert r.quasiprimitive
        if r.quasiprimitive:
            assert r.semiprimitive and not r.biquasiprimitive
        if r.regular:
            assert r.transitive and r.semiregular and r.semiprimitive
        if not r.semiprimitive:
            N = semiprimitive_witness(rec.group)
            assert not N.is_transitive() and not is_semiregular(N) and N.is_normal_in(rec.group)


def test_semiprimitive_matches_definition(catalog):
    for rec in catalog:
        if rec.degree > 8 or rec.group.order() > 400:
            continue
        G = rec.group
        assert is_semiprimitive(G) == is_semiprimitive_brute(closure(G.gens, G.degree), G.degree), rec.label


def test_permutation_isomorphism_is_an_equivalence():
    pool = [group(t, 6) for t in ("(1 2 3 4 5 6)", "(1 2)(3 4)(5 6);(1 3 5)(2 4 6)", "(1 2 3)(4 5 6);(1 4)",
                                  "(1 4)(2 5)(3 6);(1 2 3)(4 5 6)", "(2 3 4 5 6 1)", "(1 2 3);(1 2);(4 5 6)")]
    pool = [G for G in pool if G.is_transitive()]
    rel = {(i, j): permutation_isomorphic(a, b) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    for i in range(len(pool)):
        assert rel[i, i]
        for j in range(len(pool)):
            assert rel[i, j] == rel[j, i]
            assert rel[i, j] == permutation_isomorphic_brute(pool[i].elements(), pool[j].elements(), 6)
            for k in range(len(pool)):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]


def test_isomorphism_map_conjugates(catalog):
    import random

    rng = random.Random(7)
    for rec in catalog:
        if rec.degree > 9:
            break
        G = rec.group
        n = G.degree
        pi = list(range(n))
        rng.shuffle(pi)
        inv = [0] * n
        for i, x in enumerate(pi):
            inv[x] = i
        H = PermutationGroup([tuple(pi[g[inv[x]]] for x in range(n)) for g in G.gens], n)
        m = permutation_isomorphism(G, H)
        assert m is not None, rec.label
        m0 = [x - 1 for x in m]
        minv = [0] * n
        for i, x in enumerate(m0):
            minv[x] = i
        assert all(H.contains(tuple(m0[g[minv[x]]] for x in range(n))) for g in G.gens)


def test_affine_type():
    assert affine_type(group("(1 2 3);(1 2)")) is True
    assert affine_type(group("(1 2 3 4 5);(1 2)")) is False
    assert affine_type(group(F21)) is True
    # above the bound: degree 10 is not a prime power
    assert affine_type(group("(1 2 3 4 5 6 7 8 9 10);(1 2)"), bound=10) is False
    # S_9 has order above |AGL(2,3)|
    assert affine_type(group("(1 2 3 4 5 6 7 8 9);(1 2)"), bound=10) is False
    # 3^2:2 is affine, but over the bound the cheap tests cannot tell
    G = group("(1 2 3)(4 5 6)(7 8 9);(1 4 7)(2 5 8)(3 6 9);(2 3)(4 7)(5 9)(6 8)")
    assert G.order() == 18 and affine_type(G) is True
    assert affine_type(G, bound=10) is None


def test_regular_implies_semiprimitive_pairs():
    for text in ("(1 2 3 4)", "(1 2)(3 4);(1 3)(2 4)", "(1 2 3 4 5 6)"):
        G = group(text)
        assert is_regular(G) and is_semiprimitive(G)
