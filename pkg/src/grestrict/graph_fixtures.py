"""Small arc-transitive graphs given by a group acting on their vertices.

Each builder returns ``(G, v, u)``: a permutation group on the vertex set
(0-based) and an arc ``(v, u)``.  :func:`fixture_graph` turns one into a coset
graph with ``A = G_v``.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Callable

from sympy import Matrix

from .cosetgraph import CosetGraph, action_graph, build_coset_graph
from .group import PermutationGroup

Fixture = tuple[PermutationGroup, int, int]


def _group(n: int, maps: list[Callable[[int], int]]) -> PermutationGroup:
    return PermutationGroup([tuple(f(x) for x in range(n)) for f in maps], n)


def _on_labels(labels: list, maps: list[Callable]) -> PermutationGroup:
    index = {x: i for i, x in enumerate(labels)}
    return PermutationGroup([tuple(index[f(x)] for x in labels) for f in maps], len(labels))


def complete_symmetric(n: int) -> Fixture:
    """``K_n`` under ``Sym(n)``."""
    return _group(n, [lambda x: (x + 1) % n, lambda x: {0: 1, 1: 0}.get(x, x)]), 0, 1


def complete_affine(p: int, w: int) -> Fixture:
    """``K_p`` under ``AGL(1, p)``; ``w`` must generate the units mod ``p``."""
    return _group(p, [lambda x: (x + 1) % p, lambda x: (w * x) % p]), 0, 1


def complete_pgl2(p: int, w: int) -> Fixture:
    """``K_{p+1}`` under ``PGL(2, p)`` on the projective line; point ``p`` is infinity."""
    inf = p

    def neg_inv(x: int) -> int:
        if x == inf:
            return 0
        if x == 0:
            return inf
        return (-pow(x, -1, p)) % p

    return _group(p + 1, [lambda x: x if x == inf else (x + 1) % p,
                          lambda x: x if x == inf else (w * x) % p, neg_inv]), 0, 1


def cycle_dihedral(n: int) -> Fixture:
    return _group(n, [lambda x: (x + 1) % n, lambda x: (-x) % n]), 0, 1


def complete_bipartite(k: int) -> Fixture:
    """``K_{k,k}`` under ``Sym(k) wr Sym(2)``; parts ``0..k-1`` and ``k..2k-1``."""
    def cyc(x: int) -> int:
        return (x + 1) % k if x < k else x

    def swap01(x: int) -> int:
        return {0: 1, 1: 0}.get(x, x)

    return _group(2 * k, [cyc, swap01, lambda x: (x + k) % (2 * k)]), 0, k


def petersen() -> Fixture:
    pairs = [frozenset(c) for c in combinations(range(5), 2)]
    maps = [lambda s: frozenset((x + 1) % 5 for x in s),
            lambda s: frozenset({0: 1, 1: 0}.get(x, x) for x in s)]
    G = _on_labels(pairs, maps)
    return G, pairs.index(frozenset({0, 1})), pairs.index(frozenset({2, 3}))


def desargues() -> Fixture:
    """2- and 3-subsets of a 5-set, joined by inclusion, under ``Sym(5) x C2``."""
    subsets = [frozenset(c) for k in (2, 3) for c in combinations(range(5), k)]
    full = frozenset(range(5))
    maps = [lambda s: frozenset((x + 1) % 5 for x in s),
            lambda s: frozenset({0: 1, 1: 0}.get(x, x) for x in s),
            lambda s: full - s]
    G = _on_labels(subsets, maps)
    return G, subsets.index(frozenset({0, 1})), subsets.index(frozenset({0, 1, 2}))


def cube() -> Fixture:
    """The 3-cube under coordinate permutations and flips."""
    def rot(x: int) -> int:
        return ((x << 1) | (x >> 2)) & 7

    def swap(x: int) -> int:
        return (x & 4) | ((x & 1) << 1) | ((x & 2) >> 1)

    return _group(8, [rot, swap, lambda x: x ^ 1]), 0, 1


def _projective_points(q: int) -> list[tuple[int, ...]]:
    pts = []
    for v in product(range(q), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def _normalise(v: tuple[int, ...], q: int) -> tuple[int, ...]:
    lead = next(c for c in v if c % q)
    s = pow(lead, -1, q)
    return tuple((c * s) % q for c in v)


def projective_plane(q: int, w: int) -> Fixture:
    """Incidence graph of ``PG(2, q)``, ``q`` prime, under ``PGL(3, q)`` and a polarity.

    Points are vertices ``0..N-1`` and lines ``N..2N-1``; ``w`` generates the
    units mod ``q``.
    """
    pts = _projective_points(q)
    N = len(pts)
    idx = {x: i for i, x in enumerate(pts)}
    mats = [
        Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        Matrix([[w, 0, 0], [0, 1, 0], [0, 0, 1]]),
    ]
    gens = []
    for M in mats:
        dual = M.inv_mod(q).T
        img = []
        for x in pts:
            img.append(idx[_normalise(tuple(Matrix([x]) * M), q)])
        for y in pts:
            img.append(N + idx[_normalise(tuple(Matrix([y]) * dual), q)])
        gens.append(tuple(img))
    gens.append(tuple(list(range(N, 2 * N)) + list(range(N))))
    G = PermutationGroup(gens, 2 * N)
    line = next(i for i, y in enumerate(pts) if sum(a * b for a, b in zip(pts[0], y)) % q == 0)
    return G, 0, N + line


def tutte_eight_cage() -> Fixture:
    """Duads and synthemes of a 6-set, joined by inclusion, under ``Aut(Sym(6))``.

    The outer automorphism is realised through the six synthematic totals.
    """
    duads = [frozenset(c) for c in combinations(range(6), 2)]
    synthemes = sorted({frozenset([a, b, frozenset(range(6)) - a - b])
                        for a in duads for b in duads if not a & b}, key=lambda s: sorted(map(sorted, s)))
    totals = [t for t in combinations(synthemes, 5)
              if len({d for s in t for d in s}) == 15]
    assert len(totals) == 6

    def common(i: int, j: int) -> frozenset:
        (s,) = set(totals[i]) & set(totals[j])
        return s

    def duality(x: frozenset) -> frozenset:
        if x in duads:
            i, j = sorted(x)
            return common(i, j)
        parts = [sorted(d) for d in x]
        shared = set(common(*parts[0]))
        for d in parts[1:]:
            shared &= set(common(*d))
        (d,) = shared
        return d

    labels = duads + synthemes

    def perm_map(f: Callable[[int], int]) -> Callable:
        def act(x: frozenset) -> frozenset:
            if x in duads:
                return frozenset(map(f, x))
            return frozenset(frozenset(map(f, d)) for d in x)
        return act

    G = _on_labels(labels, [perm_map(lambda x: (x + 1) % 6),
                            perm_map(lambda x: {0: 1, 1: 0}.get(x, x)), duality])
    d0 = duads[0]
    s0 = next(s for s in synthemes if d0 in s)
    return G, labels.index(d0), labels.index(s0)


def lexicographic_cycle(n: int, k: int) -> Fixture:
    """``C_n[kK_1]``: each vertex of ``C_n`` blown up to ``k`` independent vertices.

    The group is ``Sym(k) wr D_n``; its kernels are not p-groups.
    """
    def at(i: int, f: Callable[[int], int]) -> Callable[[int], int]:
        return lambda x: x - x % k + f(x % k) if x // k == i else x

    maps = [at(0, lambda y: (y + 1) % k), at(0, lambda y: {0: 1, 1: 0}.get(y, y)),
            lambda x: ((x // k + 1) % n) * k + x % k,
            lambda x: ((-(x // k)) % n) * k + x % k]
    return _group(n * k, maps), 0, k


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "K3-S3": lambda: complete_symmetric(3),
    "K4-S4": lambda: complete_symmetric(4),
    "K5-S5": lambda: complete_symmetric(5),
    "K5-AGL(1,5)": lambda: complete_affine(5, 2),
    "K6-PGL(2,5)": lambda: complete_pgl2(5, 2),
    "C7-D7": lambda: cycle_dihedral(7),
    "K3,3": lambda: complete_bipartite(3),
    "K4,4": lambda: complete_bipartite(4),
    "petersen": petersen,
    "cube": cube,
    "desargues": desargues,
    "heawood": lambda: projective_plane(2, 1),
    "PG(2,3)-incidence": lambda: projective_plane(3, 2),
    "tutte-8-cage": tutte_eight_cage,
}

NEGATIVE_FIXTURES: dict[str, Callable[[], Fixture]] = {
    "C5[3K1]": lambda: lexicographic_cycle(5, 3),
}


def fixture_graph(name: str) -> CosetGraph:
    builder = FIXTURES.get(name) or NEGATIVE_FIXTURES[name]
    G, v, u = builder()
    return action_graph(G, v, u)


def sabidussi_k4() -> CosetGraph:
    """``Cos(Sym(4), Sym(3), (1 4))``."""
    S4 = PermutationGroup.from_text("(1 2 3 4);(1 2)")
    A = PermutationGroup.from_text("(1 2 3);(1 2)", 4)
    return build_coset_graph(S4, A, (3, 1, 2, 0))
