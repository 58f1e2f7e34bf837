"""Brute-force reference computations, deliberately independent of the package.

Permutations are 0-based image tuples composed left to right, matching the
package convention ``(a * b)[i] = b[a[i]]``.
"""

from __future__ import annotations

from itertools import permutations


def compose(a, b):
    return tuple(b[x] for x in a)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order(a):
    ident = tuple(range(len(a)))
    k, x = 1, a
    while x != ident:
        x = compose(x, a)
        k += 1
    return k


def orbit_of(point, elems):
    return {g[point] for g in elems}


def conjugacy_class(x, elems):
    return frozenset(compose(compose(inverse(g), x), g) for g in elems)


def subgroup_closure(gens, n):
    return frozenset(closure(list(gens), n))


def normal_subgroups(elems, n):
    """Every normal subgroup, as frozensets: joins of normal closures of classes."""
    elems = list(elems)
    classes = []
    covered = set()
    for x in elems:
        if x not in covered:
            c = conjugacy_class(x, elems)
            classes.append(c)
            covered |= c
    ident = tuple(range(n))
    basic = {}
    for c in classes:
        basic.setdefault(subgroup_closure(c, n), c)
    found = {frozenset({ident})} | set(basic)
    frontier = set(found)
    while frontier:
        new = set()
        for N in frontier:
            for B, cls in basic.items():
                if B <= N:
                    continue
                J = _join(N, cls)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return found


def _join(N, gens):
    # N is normal, so the join is the union of the cosets N y reached by
    # right multiplication with the generators of the other subgroup
    elems = set(N)
    reps = [next(iter(N))]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for b in gens:
            y = compose(r, b)
            if y not in elems:
                elems.update(compose(h, y) for h in N)
                reps.append(y)
    return frozenset(elems)


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_semiprimitive_brute(elems, n, normals=None):
    """Every normal subgroup transitive or semiregular, checked element by element."""
    ident = tuple(range(n))
    for N in normals if normals is not None else normal_subgroups(elems, n):
        if len(orbit_of(0, N)) == n:
            continue
        if any(g != ident and any(g[i] == i for i in range(n)) for g in N):
            return False
    return True


def lex_min_coset(H, g):
    return min(compose(h, g) for h in H)


def permutation_isomorphic_brute(G1, G2, n):
    """Exhaustive search over all bijections (small degree only)."""
    S1, S2 = set(G1), set(G2)
    if len(S1) != len(S2):
        return False
    for pi in permutations(range(n)):
        pinv = inverse(pi)
        if all(compose(compose(pinv, g), pi) in S2 for g in S1):
            return True
    return False


def transitive_subgroup_classes_of_sym(n):
    """Conjugacy classes of transitive subgroups of Sym(n), by closing over 2-generator subgroups.

    Every transitive subgroup of Sym(n) for n <= 5 is 2-generated.  Returns a
    sorted list of class orders.
    """
    allp = list(permutations(range(n)))
    subgroups = set()
    for a in allp:
        for b in allp:
            if a > b:
                continue
            H = subgroup_closure([a, b], n)
            if len(orbit_of(0, H)) == n:
                subgroups.add(H)
    classes = []
    seen = set()
    for H in sorted(subgroups, key=lambda s: (len(s), sorted(s))):
        if H in seen:
            continue
        conj = {frozenset(compose(compose(inverse(g), h), g) for h in H) for g in allp}
        seen |= conj
        classes.append(len(H))
    return sorted(classes)
