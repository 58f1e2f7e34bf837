"""Subgroup constructions: kernels, cosets, classes, normal and Sylow subgroups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import kernels as K
from .config import check_bound
from .errors import InputError
from .group import Perm, PermutationGroup, StabChain
from .perm import perm_order
from .util import is_prime_power, prime_factors


def action_kernel(G: PermutationGroup, images: Sequence[Perm], m: int) -> PermutationGroup:
    """Kernel of the action sending ``G.gens[i]`` to ``images[i]`` on ``m`` points.

    Builds the group of pairs ``(g, image)`` on ``n + m`` points with the
    image points first in the base; the pointwise stabilizer of those
    points, cut back to the first ``n`` points, is the kernel.
    """
    n = G.degree
    combined = [tuple(g) + tuple(x + n for x in img) for g, img in zip(G.gens, images)]
    ch = StabChain(n + m, combined, list(range(n, n + m)))
    gens = [h[:n] for h in ch.stabilizer_gens(m)]
    return PermutationGroup(gens, n)


def induced_action(G: PermutationGroup, blocks: Sequence[Sequence[int]]) -> list[Perm]:
    """Images of the generators on a ``G``-invariant partition (0-based)."""
    where = {}
    for i, blk in enumerate(blocks):
        for x in blk:
            where[x] = i
    return [tuple(where[g[blk[0]]] for blk in blocks) for g in G.gens]


def block_kernel(G: PermutationGroup, blocks: Sequence[Sequence[int]]) -> PermutationGroup:
    return action_kernel(G, induced_action(G, blocks), len(blocks))


@dataclass
class CosetAction:
    """``G`` acting on the right cosets of ``H`` by right multiplication."""

    reps: list[Perm]  # lexicographically least element of each coset
    index: dict[Perm, int]
    images: list[Perm]  # one permutation per generator of G
    group: PermutationGroup  # the image group on the cosets
    subgroup_chain: StabChain = field(repr=False)

    def coset_of(self, g: Perm) -> int:
        return self.index[self.subgroup_chain.coset_min(g)]

    def act(self, g: Perm) -> Perm:
        """Permutation of the cosets induced by an arbitrary element."""
        return tuple(self.coset_of(K.mul(r, g)) for r in self.reps)


def coset_action(G: PermutationGroup, H: PermutationGroup, bound: int | None = None) -> CosetAction:
    if not H.is_subgroup_of(G):
        raise InputError("subgroup is not contained in the group")
    idx = G.order() // H.order()
    check_bound("coset count", idx, bound)
    hc = H.chain()
    first = hc.coset_min(G.identity)
    reps = [first]
    index = {first: 0}
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for s in G.gens:
            c = hc.coset_min(K.mul(r, s))
            if c not in index:
                index[c] = len(reps)
                reps.append(c)
    images = [tuple(index[hc.coset_min(K.mul(r, s))] for r in reps) for s in G.gens]
    return CosetAction(reps, index, images, PermutationGroup(images, len(reps)), hc)


def core(G: PermutationGroup, H: PermutationGroup, bound: int | None = None) -> PermutationGroup:
    """Largest normal subgroup of ``G`` inside ``H``: the coset-action kernel."""
    ca = coset_action(G, H, bound)
    return action_kernel(G, ca.images, len(ca.reps))


def intersection(A: PermutationGroup, B: PermutationGroup, bound: int | None = None) -> PermutationGroup:
    """Intersection by listing the smaller group."""
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    bc = big.chain()
    ch: StabChain | None = None
    gens: list[Perm] = []
    for x in small.elements(bound):
        if bc.contains(x) and (ch is None or not ch.contains(x)):
            if x == small.identity:
                continue
            gens.append(x)
            ch = StabChain(A.degree, gens)
    return PermutationGroup(gens, A.degree)


def normal_closure(G: PermutationGroup, gens: Sequence[Perm]) -> PermutationGroup:
    """Smallest normal subgroup of ``G`` containing ``gens``."""
    n = G.degree
    ident = G.identity
    cur = [g for g in dict.fromkeys(gens) if g != ident]
    if not cur:
        return PermutationGroup([], n)
    ch = StabChain(n, cur)
    ginv = [K.inv(g) for g in G.gens]
    queue = list(cur)
    while queue:
        h = queue.pop()
        for g, gi in zip(G.gens, ginv):
            c = K.conj(h, g, gi)
            if not ch.contains(c):
                cur.append(c)
                ch = StabChain(n, cur)
                queue.append(c)
    return PermutationGroup(cur, n)


@dataclass
class ConjugacyClasses:
    elements: list[Perm]
    labels: list[int]
    classes: list[list[int]]  # element indices, first element is the lex-least

    def reps(self) -> list[Perm]:
        return [self.elements[c[0]] for c in self.classes]


def conjugacy_classes(G: PermutationGroup, bound: int | None = None, only: Callable[[Perm], bool] | None = None) -> ConjugacyClasses:
    """Classes of ``G``; with ``only``, just the classes meeting that predicate.

    The predicate must be a class function (e.g. element order).
    """
    elems = sorted(G.elements(bound))
    if only is not None:
        elems = [e for e in elems if only(e)]
    gens = list(G.gens)
    labels = K.class_labels(elems, gens, [K.inv(g) for g in gens])
    classes: list[list[int]] = [[] for _ in range(max(labels, default=-1) + 1)]
    for i, lab in enumerate(labels):
        classes[lab].append(i)
    return ConjugacyClasses(elems, labels, classes)


@dataclass
class SubgroupLattice:
    """Normal subgroups with their containment relation.

    ``masks[i]`` records which conjugacy classes make up subgroup ``i``;
    containment is mask inclusion.
    """

    subgroups: list[PermutationGroup]
    masks: list[int]
    class_sizes: list[int]

    def orders(self) -> list[int]:
        return [sum(self.class_sizes[k] for k in range(len(self.class_sizes)) if m >> k & 1) for m in self.masks]

    def contains(self, i: int, j: int) -> bool:
        """Whether subgroup ``j`` lies inside subgroup ``i``."""
        return self.masks[j] & ~self.masks[i] == 0

    def __len__(self) -> int:
        return len(self.subgroups)


def normal_subgroups(G: PermutationGroup, bound: int | None = None) -> SubgroupLattice:
    """All normal subgroups, as joins of normal closures of classes."""
    cc = conjugacy_classes(G, bound)
    reps = cc.reps()
    sizes = [len(c) for c in cc.classes]

    def mask_of(N: PermutationGroup) -> int:
        ch = N.chain()
        m = 0
        for k, r in enumerate(reps):
            if ch.contains(r):
                m |= 1 << k
        return m

    n = G.degree
    found: dict[int, PermutationGroup] = {}
    trivial = PermutationGroup([], n)
    found[mask_of(trivial)] = trivial
    closures: list[tuple[int, PermutationGroup]] = []
    for k, r in enumerate(reps):
        if r == G.identity:
            continue
        N = normal_closure(G, [r])
        m = mask_of(N)
        if m not in found:
            found[m] = N
        closures.append((m, N))
    # join-closure against the class closures
    frontier = list(found.items())
    while frontier:
        nxt = []
        for m, N in frontier:
            for cm, C in closures:
                if cm & ~m == 0:
                    continue
                J = PermutationGroup(N.gens + C.gens, n)
                jm = mask_of(J)
                if jm not in found:
                    found[jm] = J
                    nxt.append((jm, J))
        frontier = nxt
    order = sorted(found, key=lambda m: (sum(sizes[k] for k in range(len(sizes)) if m >> k & 1), m))
    return SubgroupLattice([found[m] for m in order], order, sizes)


def p_part(order: int, p: int) -> int:
    q = 1
    while order % p == 0:
        order //= p
        q *= p
    return q


def normalizer_elements(G: PermutationGroup, H: PermutationGroup, bound: int | None = None) -> list[Perm]:
    hc = H.chain()
    out = []
    for g in G.elements(bound):
        gi = K.inv(g)
        if all(hc.contains(K.conj(h, g, gi)) for h in H.gens):
            out.append(g)
    return out


def sylow_subgroup(G: PermutationGroup, p: int, bound: int | None = None) -> PermutationGroup:
    """A Sylow ``p``-subgroup, grown through normalizers.

    At each step the lexicographically least ``p``-element of the
    normalizer outside the current subgroup is adjoined.
    """
    target = p_part(G.order(), p)
    n = G.degree
    P = PermutationGroup([], n)
    while P.order() < target:
        pc = P.chain()
        cand = None
        for g in sorted(normalizer_elements(G, P, bound)):
            if pc.contains(g):
                continue
            if is_prime_power(perm_order(g), p):
                cand = g
                break
        if cand is None:  # cannot happen by Sylow's theorems
            raise AssertionError("normalizer ascent stalled")
        P = PermutationGroup(P.gens + [cand], n)
    return P


def is_p_group(G: PermutationGroup, p: int) -> bool:
    return is_prime_power(G.order(), p)


def largest_normal_p_subgroup(G: PermutationGroup, p: int, bound: int | None = None) -> PermutationGroup:
    """``O_p(G)``: generated by the p-elements whose normal closure is a p-group."""
    n = G.degree
    if G.order() % p:
        return PermutationGroup([], n)
    cc = conjugacy_classes(G, bound, only=lambda e: is_prime_power(perm_order(e), p))
    gens: list[Perm] = []
    for rep in cc.reps():
        if rep == G.identity:
            continue
        N = normal_closure(G, [rep])
        if is_p_group(N, p):
            gens.extend(N.gens)
    return PermutationGroup(gens, n)


def primes_dividing(n: int) -> list[int]:
    return prime_factors(n)
