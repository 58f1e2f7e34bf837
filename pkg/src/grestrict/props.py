"""Permutation-group properties: blocks, semiregularity and its relatives.

Semiprimitivity, quasiprimitivity and biquasiprimitivity are decided
through block systems.  The orbits of a normal subgroup ``N`` of a
transitive group form a block system ``B``, and ``N`` lies in the kernel
``K_B`` of the action on ``B``.  So an intransitive normal subgroup that
is nontrivial (or not semiregular) forces the same of some ``K_B``, and
checking every block-system kernel is exact without listing elements.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import kernels as K
from .config import MAX_SEARCH_NODES, check_bound, max_order
from .errors import InputError, ResourceLimitError
from .group import Perm, PermutationGroup
from .perm import Permutation, cycle_type
from .subgroups import action_kernel, block_kernel, normal_subgroups

Partition = list[tuple[int, ...]]


# ---------------------------------------------------------------- blocks

def _minimal_block(gens: Sequence[Perm], n: int, seed: Sequence[int]) -> list[int]:
    """Smallest block containing ``seed`` (union-find closure)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = [(seed[0], s) for s in seed[1:]]
    while pairs:
        a, b = pairs.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra
        for g in gens:
            pairs.append((g[a], g[b]))
    root = find(seed[0])
    return [x for x in range(n) if find(x) == root]


def _system_from_block(gens: Sequence[Perm], n: int, block: Sequence[int]) -> list[tuple[int, ...]]:
    blocks = [tuple(sorted(block))]
    seen = set(block)
    i = 0
    while i < len(blocks):
        for g in gens:
            img = tuple(sorted(g[x] for x in blocks[i]))
            if img[0] not in seen:
                seen.update(img)
                blocks.append(img)
        i += 1
    return sorted(blocks)


def block_systems0(G: PermutationGroup, minimal_only: bool = False) -> list[list[tuple[int, ...]]]:
    """Nontrivial block systems of a transitive group, 0-based.

    Blocks through point 0 are closed under "add a point and take the
    smallest block containing the result", starting from pairs.
    Sorted by block size, then lexicographically.
    """
    n = G.degree
    gens = G.gens
    if not G.is_transitive():
        raise InputError("block systems need a transitive group")
    found: set[tuple[int, ...]] = set()
    for b in range(1, n):
        blk = tuple(_minimal_block(gens, n, [0, b]))
        if len(blk) < n:
            found.add(blk)
    minimal = {B for B in found if not any(set(C) < set(B) for C in found)}
    if not minimal_only:
        queue = list(found)
        while queue:
            B = queue.pop()
            for x in range(n):
                if x in B:
                    continue
                bigger = tuple(_minimal_block(gens, n, list(B) + [x]))
                if len(bigger) < n and bigger not in found:
                    found.add(bigger)
                    queue.append(bigger)
    chosen = minimal if minimal_only else found
    systems = [_system_from_block(gens, n, B) for B in chosen]
    return sorted(systems, key=lambda s: (len(s[0]), s))


def _one_based(system: Sequence[Sequence[int]]) -> Partition:
    return [tuple(x + 1 for x in blk) for blk in system]


def block_systems(G: PermutationGroup) -> list[Partition]:
    """Minimal nontrivial block systems (1-based); empty iff primitive."""
    return [_one_based(s) for s in block_systems0(G, minimal_only=True)]


def all_block_systems(G: PermutationGroup) -> list[Partition]:
    return [_one_based(s) for s in block_systems0(G)]


def is_primitive(G: PermutationGroup) -> bool:
    return G.is_transitive() and not block_systems0(G, minimal_only=True)


# ---------------------------------------------------------- semiregularity

@dataclass
class SemiregularWitness:
    element: Permutation
    fixed_point: int


def semiregular_witness(N: PermutationGroup) -> SemiregularWitness | None:
    """``None`` if ``N`` is semiregular, else a nonidentity element with a fixed point."""
    size = N.order()
    short = [o for o in N.orbits0() if len(o) != size]
    if not short:
        return None
    for g in N.gens:
        fixed = [i for i in range(N.degree) if g[i] == i]
        if fixed:
            return SemiregularWitness(Permutation.from_array(g), fixed[0] + 1)
    x = min(short[0])
    stab = N.stabilizer0(x)
    g = min(stab.gens)
    return SemiregularWitness(Permutation.from_array(g), x + 1)


def is_semiregular(N: PermutationGroup) -> bool:
    return all(len(o) == N.order() for o in N.orbits0())


def is_regular(G: PermutationGroup) -> bool:
    return G.is_transitive() and G.order() == G.degree


def is_two_transitive(G: PermutationGroup) -> bool:
    if G.degree < 2:
        raise InputError("2-transitivity needs degree at least 2")
    if not G.is_transitive():
        return False
    return len(G.stabilizer0(0).orbits0()) == 2


# ------------------------------------------------------- block-kernel view

@dataclass
class BlockKernel:
    system: list[tuple[int, ...]]  # 0-based blocks
    kernel: PermutationGroup

    def orbit_partition(self) -> list[tuple[int, ...]]:
        return sorted(tuple(o) for o in self.kernel.orbits0())


def block_kernels(G: PermutationGroup) -> list[BlockKernel]:
    return [BlockKernel(s, block_kernel(G, s)) for s in block_systems0(G)]


def _require_transitive(G: PermutationGroup) -> None:
    if not G.is_transitive():
        raise InputError("the group is not transitive")


def semiprimitive_witness(G: PermutationGroup) -> PermutationGroup | None:
    """A normal subgroup that is neither transitive nor semiregular, if any.

    Any such subgroup sits inside some block-system kernel, which is then
    also intransitive and not semiregular; so checking the kernels is
    exact.  The first failing kernel in block-system order is returned.
    """
    _require_transitive(G)
    for bk in block_kernels(G):
        if not is_semiregular(bk.kernel):
            return bk.kernel
    return None


def is_semiprimitive(G: PermutationGroup) -> bool:
    return semiprimitive_witness(G) is None


def quasiprimitive_witness(G: PermutationGroup) -> PermutationGroup | None:
    """A nontrivial intransitive normal subgroup, if any."""
    _require_transitive(G)
    for bk in block_kernels(G):
        if not bk.kernel.is_trivial():
            return bk.kernel
    return None


def is_quasiprimitive(G: PermutationGroup) -> bool:
    return quasiprimitive_witness(G) is None


def normal_orbit_partitions(G: PermutationGroup) -> list[list[tuple[int, ...]]]:
    """Orbit partitions of the nontrivial intransitive normal subgroups.

    A partition ``B`` arises this way exactly when ``K_B`` is nontrivial
    with orbits equal to ``B``.
    """
    out = []
    for bk in block_kernels(G):
        if not bk.kernel.is_trivial() and bk.orbit_partition() == bk.system:
            out.append(bk.system)
    return out


def is_biquasiprimitive(G: PermutationGroup) -> bool:
    _require_transitive(G)
    if is_quasiprimitive(G):
        return False
    return all(len(p) <= 2 for p in normal_orbit_partitions(G))


# ------------------------------------------------------------ affine type

def _gl_order(d: int, p: int) -> int:
    out = 1
    for i in range(d):
        out *= p**d - p**i
    return out


def _prime_power(n: int) -> tuple[int, int] | None:
    from .util import prime_factors

    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p, d = ps[0], 0
    while n > 1:
        n //= p
        d += 1
    return p, d


def regular_abelian_normal_subgroup(G: PermutationGroup, bound: int | None = None) -> PermutationGroup | None:
    lat = normal_subgroups(G, bound)
    for N in lat.subgroups:
        if N.order() == G.degree and N.is_transitive() and _is_abelian(N):
            return N
    return None


def _is_abelian(N: PermutationGroup) -> bool:
    gens = N.gens
    return all(K.mul(a, b) == K.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def affine_type(G: PermutationGroup, bound: int | None = None) -> bool | None:
    """Whether ``G`` has a regular abelian normal subgroup.

    Exact through the normal-subgroup lattice within the bound.  Above
    it, a primitive group is shown non-affine when its degree is not a
    prime power ``p^d`` or its order does not divide ``p^d |GL(d, p)|``;
    otherwise the answer is ``None`` (undetermined).
    """
    _require_transitive(G)
    limit = max_order() if bound is None else bound
    if G.order() <= limit:
        return regular_abelian_normal_subgroup(G, bound) is not None
    if is_primitive(G):
        pp = _prime_power(G.degree)
        if pp is None:
            return False
        p, d = pp
        if (G.degree * _gl_order(d, p)) % G.order():
            return False
    return None


# ------------------------------------------------- permutation isomorphism

def _orbitals(G: PermutationGroup) -> tuple[list[list[int]], list[int]]:
    """Colour each ordered pair by its orbital; also return orbital sizes."""
    n = G.degree
    color = [[-1] * n for _ in range(n)]
    sizes = []
    for a in range(n):
        for b in range(n):
            if color[a][b] >= 0:
                continue
            c = len(sizes)
            color[a][b] = c
            stack = [(a, b)]
            count = 1
            while stack:
                x, y = stack.pop()
                for g in G.gens:
                    u, v = g[x], g[y]
                    if color[u][v] < 0:
                        color[u][v] = c
                        count += 1
                        stack.append((u, v))
            sizes.append(count)
    return color, sizes


def _point_signatures(G: PermutationGroup) -> list[tuple]:
    orbit_len = {}
    for o in G.orbits0():
        for x in o:
            orbit_len[x] = len(o)
    sig = []
    for x in range(G.degree):
        stab = G.stabilizer0(x)
        sig.append((orbit_len[x], tuple(sorted(len(o) for o in stab.orbits0()))))
    return sig


def _invariants(G: PermutationGroup, sig: list[tuple], osizes: list[int]) -> tuple:
    inv = (G.degree, G.order(), tuple(sorted(sig)), tuple(sorted(osizes)))
    if G.order() <= 20000:
        from collections import Counter

        ct = Counter(cycle_type(e) for e in G.elements())
        inv += (tuple(sorted(ct.items())),)
    return inv


def permutation_isomorphism(G1: PermutationGroup, G2: PermutationGroup, node_cap: int = MAX_SEARCH_NODES) -> list[int] | None:
    """A bijection ``phi`` (1-based list) with ``phi^-1 G1 phi = G2``, or ``None``.

    Backtracking over point images.  Assignments must map orbitals of
    ``G1`` to orbitals of ``G2`` consistently, and candidate images are
    reduced to one per orbit of the pointwise stabilizer in ``G2`` of the
    images already chosen (composing a solution with such an element
    gives another solution).  Each full assignment is checked by
    conjugating the generators of ``G1`` into ``G2``.
    """
    if G1.degree != G2.degree:
        return None
    n = G1.degree
    sig1, sig2 = _point_signatures(G1), _point_signatures(G2)
    col1, sz1 = _orbitals(G1)
    col2, sz2 = _orbitals(G2)
    if _invariants(G1, sig1, sz1) != _invariants(G2, sig2, sz2):
        return None
    # points of G1 in generator-BFS order
    order: list[int] = []
    seen: set[int] = set()
    for start in range(n):
        if start in seen:
            continue
        for x in K.orbit(start, list(G1.gens)):
            if x not in seen:
                seen.add(x)
                order.append(x)
    phi = [-1] * n
    used = [False] * n
    cmap: dict[int, int] = {}
    rmap: dict[int, int] = {}
    nodes = 0
    c2 = G2.chain()

    def consistent(x: int, y: int, added: list[int]) -> bool:
        pairs = [(col1[x][x], col2[y][y])]
        for x2 in order:
            y2 = phi[x2]
            if y2 < 0:
                continue
            pairs.append((col1[x][x2], col2[y][y2]))
            pairs.append((col1[x2][x], col2[y2][y]))
        for a, b in pairs:
            if a in cmap:
                if cmap[a] != b:
                    return False
            elif b in rmap or sz1[a] != sz2[b]:
                return False
            else:
                cmap[a] = b
                rmap[b] = a
                added.append(a)
        return True

    def undo(added: list[int]) -> None:
        for a in added:
            del rmap[cmap.pop(a)]

    def check() -> bool:
        inv_phi = [0] * n
        for x, y in enumerate(phi):
            inv_phi[y] = x
        for g in G1.gens:
            t = tuple(phi[g[inv_phi[y]]] for y in range(n))
            if not c2.contains(t):
                return False
        return True

    def search(depth: int, stab_gens: list[Perm]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise ResourceLimitError("isomorphism search nodes", nodes, node_cap)
        if depth == n:
            return check()
        x = order[depth]
        cands = [y for y in range(n) if not used[y] and sig2[y] == sig1[x]]
        if stab_gens:
            reps = []
            covered: set[int] = set()
            for y in cands:
                if y in covered:
                    continue
                covered.update(K.orbit(y, stab_gens))
                reps.append(y)
            cands = reps
        for y in cands:
            added: list[int] = []
            if consistent(x, y, added):
                phi[x] = y
                used[y] = True
                nxt = PermutationGroup(stab_gens, n).stabilizer0(y).gens if stab_gens else []
                if search(depth + 1, nxt):
                    return True
                phi[x] = -1
                used[y] = False
            undo(added)
        return False

    if not search(0, list(G2.gens)):
        return None
    return [y + 1 for y in phi]


def permutation_isomorphic(G1: PermutationGroup, G2: PermutationGroup) -> bool:
    return permutation_isomorphism(G1, G2) is not None


# ------------------------------------------------------------ local action

def restrict(G: PermutationGroup, points: Sequence[int]) -> tuple[PermutationGroup, list[Perm]]:
    """Action of ``G`` on an invariant set of 0-based points, relabelled 0..k-1.

    Returns the image group and the generator images.
    """
    pts = sorted(points)
    pos = {x: i for i, x in enumerate(pts)}
    images = []
    for g in G.gens:
        try:
            images.append(tuple(pos[g[x]] for x in pts))
        except KeyError:
            raise InputError("point set is not invariant") from None
    return PermutationGroup(images, len(pts)), images


def local_action(G: PermutationGroup, stabilizer: PermutationGroup, neighbourhood: Sequence[int]) -> tuple[PermutationGroup, PermutationGroup]:
    """Permutation group induced on a neighbourhood, and the kernel of that action.

    ``neighbourhood`` uses 1-based points of ``G``'s domain.
    """
    pts = [x - 1 for x in neighbourhood]
    image, images = restrict(stabilizer, pts)
    kernel = action_kernel(stabilizer, images, len(pts))
    return image, kernel


# ---------------------------------------------------------------- report

@dataclass
class PropertyReport:
    degree: int
    order: int
    transitive: bool
    semiregular: bool
    regular: bool | None = None
    primitive: bool | None = None
    quasiprimitive: bool | None = None
    biquasiprimitive: bool | None = None
    semiprimitive: bool | None = None
    two_transitive: bool | None = None
    affine_type: bool | None = None
    witnesses: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _gens_text(G: PermutationGroup) -> list[str]:
    return [str(g) for g in G.generators] or ["()"]


def property_report(G: PermutationGroup, with_affine: bool = True, bound: int | None = None) -> PropertyReport:
    rep = PropertyReport(G.degree, G.order(), G.is_transitive(), is_semiregular(G))
    w = rep.witnesses
    if not rep.transitive:
        w["transitive"] = [list(o) for o in G.orbits()]
        return rep
    rep.regular = rep.order == rep.degree
    minimal = block_systems(G)
    rep.primitive = not minimal
    if minimal:
        w["primitive"] = [list(b) for b in minimal[0]]
    q = quasiprimitive_witness(G)
    rep.quasiprimitive = q is None
    if q is not None:
        w["quasiprimitive"] = _gens_text(q)
    rep.biquasiprimitive = is_biquasiprimitive(G)
    s = semiprimitive_witness(G)
    rep.semiprimitive = s is None
    if s is not None:
        sw = semiregular_witness(s)
        w["semiprimitive"] = {"normal_subgroup": _gens_text(s), "element": str(sw.element), "fixed_point": sw.fixed_point}
    rep.two_transitive = is_two_transitive(G) if G.degree >= 2 else None
    if rep.two_transitive is False:
        w["two_transitive"] = [list(o) for o in G.stabilizer(1).orbits()]
    if with_affine:
        try:
            rep.affine_type = affine_type(G, bound)
        except ResourceLimitError:
            rep.affine_type = None
    return rep
