"""Locally-L graphs with unbounded vertex kernels for non-semiprimitive L.

Given a transitive group ``L`` on ``Λ`` and an intransitive normal
subgroup ``K`` that is not semiregular, the construction below builds,
for every odd ``m``, a finite group ``A`` with a subgroup ``C`` such that

* ``A`` acts on the cosets of ``C`` as ``L`` acts on ``Λ``;
* the kernel ``M`` of that action has order ``|K_λ|^(|Δ| m)``;
* ``C`` has an involutory automorphism ``ι`` and no nontrivial subgroup
  of ``C`` is normal in both ``A`` and ``B = C ⋊ <ι>``.

The coset graph of the amalgam ``A *_C B`` is then a locally-L tree
whose vertex kernels grow with ``m``.

Notation: ``Δ`` is the orbit partition of ``K``, ``S`` the group induced
on ``Δ``, ``π`` the map ``L -> S``, ``δ`` the block holding point 0 and
``λ = 0``.  An element of ``A`` is a pair ``(g, F)`` with ``g`` in ``L``
and ``F`` a tuple of ``m`` functions ``S -> L_λ`` constant on right
``S_δ``-cosets.  Such a coset ``S_δ x`` is identified with the block
``δ^x``, so each function is stored as a tuple indexed by block.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels as K
from .config import check_bound, max_order
from .errors import InputError, ResourceLimitError
from .group import Perm, PermutationGroup
from .props import permutation_isomorphism
from .subgroups import block_kernel

Func = tuple  # tuple of L_λ elements indexed by block
Elem = tuple  # (g, (F_1, ..., F_m))

RADIUS_CAP = 3


@dataclass
class Check:
    """Outcome of one verifier; truthy when the check passed."""

    name: str
    ok: bool
    detail: str = ""
    counterexample: object = None

    def __bool__(self) -> bool:
        return self.ok


# ------------------------------------------------------------------ setup

@dataclass
class QuotientSetup:
    L: PermutationGroup
    K: PermutationGroup  # kernel of L on the blocks
    blocks: list[tuple[int, ...]]
    block_of: list[int]
    S: PermutationGroup
    S_elements: list[Perm]
    S_delta: frozenset
    transversal: list[Perm]  # transversal[b] maps block 0 to block b
    tau: dict[Perm, Perm]
    L_lam: PermutationGroup
    K_lam: PermutationGroup
    K_lam_elements: list[Perm]
    eps: dict[Perm, Perm]  # section S_δ -> L_λ
    L_elements: list[Perm] = field(repr=False)

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def pi(self, g: Perm) -> Perm:
        return tuple(self.block_of[g[blk[0]]] for blk in self.blocks)

    def sigma(self, g: Perm, b: int) -> Perm:
        """``τ(x (g^π)^-1) g^π τ(x)^-1`` for any ``x`` with ``δ^x = b``."""
        pg = self.pi(g)
        pgi = K.inv(pg)
        t = self.transversal
        return K.mul(K.mul(t[pgi[b]], pg), K.inv(t[b]))

    def eps_coset(self, s: Perm) -> list[Perm]:
        """All elements of ``L_λ`` mapping to ``s``: the coset ``ε(s) K_λ``."""
        e = self.eps[s]
        return [K.mul(e, k) for k in self.K_lam_elements]


def build_setup(L: PermutationGroup, Kn: PermutationGroup, bound: int | None = None) -> QuotientSetup:
    """Quotient data for ``L`` and an intransitive normal subgroup ``Kn``."""
    if not L.is_transitive():
        raise InputError("L must be transitive")
    if not Kn.is_normal_in(L):
        raise InputError("K is not a normal subgroup of L")
    if Kn.is_transitive():
        raise InputError("K is transitive, so its orbit partition is trivial")
    check_bound("group order", L.order(), bound)
    n = L.degree
    blocks = sorted(tuple(o) for o in Kn.orbits0())
    block_of = [0] * n
    for i, blk in enumerate(blocks):
        for x in blk:
            block_of[x] = i
    kernel = block_kernel(L, blocks)
    s_gens = [tuple(block_of[g[blk[0]]] for blk in blocks) for g in L.gens]
    S = PermutationGroup(s_gens, len(blocks))
    S_elements = sorted(S.elements(bound))
    # lexicographically least element of S sending block 0 to each block
    transversal: list[Perm | None] = [None] * len(blocks)
    for s in S_elements:
        if transversal[s[0]] is None:
            transversal[s[0]] = s
    tau = {s: transversal[s[0]] for s in S_elements}
    S_delta = frozenset(s for s in S_elements if s[0] == 0)
    L_lam = L.stabilizer0(0)
    K_lam = kernel.stabilizer0(0)
    L_elements = sorted(L.elements(bound))
    eps: dict[Perm, Perm] = {}
    for h in L_elements:
        if h[0] == 0:
            s = tuple(block_of[h[blk[0]]] for blk in blocks)
            if s not in eps:
                eps[s] = h
    return QuotientSetup(
        L, kernel, blocks, block_of, S, S_elements, S_delta, transversal, tau,
        L_lam, K_lam, sorted(K_lam.elements(bound)), eps, L_elements,
    )


def verify_tau(setup: QuotientSetup, tau: dict[Perm, Perm] | None = None) -> Check:
    """``τ(x s^-1) s τ(x)^-1`` lies in ``S_δ`` for all ``x, s`` in ``S``."""
    tau = setup.tau if tau is None else tau
    ident = setup.S.identity
    if tau.get(ident) != ident:
        return Check("tau", False, "tau(1) is not 1", ident)
    for s in setup.S_elements:
        if K.mul(K.inv(tau[s]), s)[0] != 0:
            return Check("tau", False, "tau(s) not in the coset of s", s)
    for x in setup.S_elements:
        tx_inv = K.inv(tau[x])
        for s in setup.S_elements:
            y = K.mul(K.mul(tau[K.mul(x, K.inv(s))], s), tx_inv)
            if y[0] != 0:
                return Check("tau", False, "element outside S_delta", (x, s))
    return Check("tau", True, f"{len(setup.S_elements) ** 2} pairs")


# ----------------------------------------------------------------- system

@dataclass
class WitnessSystem:
    setup: QuotientSetup
    m: int
    identity: Elem
    A_gens: list[Elem]
    M_gens: list[Elem]
    A: list[Elem] | None  # full element list when within the bound
    order_A: int  # by counting constraint cosets
    order_M: int
    order_C: int

    # -- group law

    def mul(self, x: Elem, y: Elem) -> Elem:
        g, F = x
        h, H = y
        pi_inv = K.inv(self.setup.pi(h))
        return (K.mul(g, h), tuple(tuple(K.mul(f[pi_inv[b]], hb) for b, hb in enumerate(Hi)) for f, Hi in zip(F, H)))

    def inv(self, x: Elem) -> Elem:
        g, F = x
        pg = self.setup.pi(g)
        return (K.inv(g), tuple(tuple(K.inv(f[pg[b]]) for b in range(len(f))) for f in F))

    def conj(self, x: Elem, a: Elem) -> Elem:
        return self.mul(self.mul(self.inv(a), x), a)

    def phi(self, x: Elem) -> Perm:
        return x[0]

    # -- membership

    def is_member(self, x: Elem) -> bool:
        """The defining constraint, checked literally for every ``x`` in ``S``."""
        st = self.setup
        g, F = x
        if len(F) != self.m or not st.L.chain().contains(g):
            return False
        lam = st.L_lam.chain()
        pg = st.pi(g)
        pgi = K.inv(pg)
        for f in F:
            if len(f) != st.nblocks or not all(lam.contains(v) for v in f):
                return False
            for s in st.S_elements:
                rhs = K.mul(K.mul(st.tau[K.mul(s, pgi)], pg), K.inv(st.tau[s]))
                if st.pi(f[s[0]]) != rhs:
                    return False
        return True

    def in_C(self, x: Elem) -> bool:
        return x[0][0] == 0

    def in_M(self, x: Elem) -> bool:
        return x[0] == self.setup.L.identity

    # -- lifts and the involution

    def lift(self, g: Perm) -> Elem:
        st = self.setup
        f = tuple(st.eps[st.sigma(g, b)] for b in range(st.nblocks))
        return (g, (f,) * self.m)

    def iota(self, c: Elem) -> Elem:
        g, F = c
        m = self.m
        nb = self.setup.nblocks

        def f(i: int, b: int) -> Perm:  # 1-based function index
            return F[i - 1][b]

        out = []
        for i in range(1, m + 1):
            vals = []
            for b in range(nb):
                if i == 1:
                    v = g if b == 0 else (f(2, b) if m >= 3 else f(1, b))
                elif i % 2 == 0:
                    v = f(i + 1, 0) if b == 0 else f(i - 1, b)
                else:
                    if b == 0:
                        v = f(i - 1, 0)
                    else:
                        v = f(i + 1, b) if i <= m - 2 else f(m, b)
                vals.append(v)
            out.append(tuple(vals))
        return (F[0][0], tuple(out))

    # -- derived sets

    def elements_A(self) -> list[Elem]:
        if self.A is None:
            raise ResourceLimitError("|A|", self.order_A, max_order())
        return self.A

    def elements_C(self) -> list[Elem]:
        return [x for x in self.elements_A() if self.in_C(x)]

    def elements_M(self) -> list[Elem]:
        """``M`` built directly as all ``(1, F)`` with values in ``K_λ``."""
        st = self.setup
        ident = st.L.identity
        slots = self.m * st.nblocks
        out = []
        for vals in itertools.product(st.K_lam_elements, repeat=slots):
            F = tuple(tuple(vals[i * st.nblocks:(i + 1) * st.nblocks]) for i in range(self.m))
            out.append((ident, F))
        return out

    def coset_reps(self) -> dict[int, Elem]:
        """Representatives of the right cosets of ``C``, keyed by point of ``Λ``."""
        st = self.setup
        reps: dict[int, Elem] = {}
        for g in st.L_elements:
            if g[0] not in reps:
                reps[g[0]] = self.lift(g)
        return reps

    def summary(self) -> dict:
        st = self.setup
        return {
            "m": self.m,
            "blocks": [[x + 1 for x in b] for b in st.blocks],
            "order_L": st.L.order(),
            "order_K": st.K.order(),
            "order_L_lambda": st.L_lam.order(),
            "order_K_lambda": st.K_lam.order(),
            "order_A": self.order_A,
            "order_C": self.order_C,
            "order_M": self.order_M,
        }


def build_system(setup: QuotientSetup, m: int, enumerate_elements: bool = True, bound: int | None = None) -> WitnessSystem:
    if m < 1 or m % 2 == 0:
        raise InputError("m must be a positive odd integer")
    st = setup
    kl = st.K_lam.order()
    order_M = kl ** (st.nblocks * m)
    order_A = order_M * st.L.order()
    order_C = order_M * st.L_lam.order()
    ident_f = tuple(st.L.identity for _ in range(st.nblocks))
    identity = (st.L.identity, (ident_f,) * m)
    sys_ = WitnessSystem(st, m, identity, [], [], None, order_A, order_M, order_C)
    sys_.A_gens = [sys_.lift(g) for g in st.L.gens]
    for i in range(m):
        for b in range(st.nblocks):
            for k in st.K_lam.gens:
                F = [list(ident_f) for _ in range(m)]
                F[i][b] = k
                sys_.M_gens.append((st.L.identity, tuple(tuple(f) for f in F)))
    sys_.A_gens += sys_.M_gens
    limit = max_order() if bound is None else bound
    if enumerate_elements:
        check_bound("|A|", order_A, limit)
        sys_.A = _enumerate_by_cosets(sys_)
    return sys_


def _enumerate_by_cosets(sys_: WitnessSystem) -> list[Elem]:
    """For each ``g``, every ``f_i(x)`` ranges over the coset ``ε(σ) K_λ``."""
    st = sys_.setup
    m, nb = sys_.m, st.nblocks
    out = []
    for g in st.L_elements:
        choices = [st.eps_coset(st.sigma(g, b)) for b in range(nb)]
        funcs = [tuple(c) for c in itertools.product(*choices)]
        for F in itertools.product(funcs, repeat=m):
            out.append((g, F))
    return out


def closure(gens: Sequence[Elem], mul, identity: Elem, limit: int) -> list[Elem]:
    """Breadth-first closure of ``gens`` under a multiplication function."""
    seen = {identity}
    out = [identity]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > limit:
                    raise ResourceLimitError("closure size", len(out), limit)
    return out


# --------------------------------------------------------------- verifiers

def _pairs(elems: Sequence[Elem], gens: Sequence[Elem], bound: int | None, seed: int = 0) -> Iterable[tuple[Elem, Elem]]:
    limit = max_order() if bound is None else bound
    if len(elems) ** 2 <= limit:
        return itertools.product(elems, repeat=2)
    rng = random.Random(seed)
    sample = [(rng.choice(elems), rng.choice(elems)) for _ in range(min(limit, 20000))]
    return itertools.chain(itertools.product(gens, repeat=2), itertools.product(elems, gens), sample)


def verify_group_axioms(system: WitnessSystem, extra: Sequence[Elem] = (), bound: int | None = None) -> Check:
    """Closure under the product and the inverse formula, plus a second count.

    ``extra`` elements join the pool, so a constraint-violating element
    is caught either directly or through its products.
    """
    A = system.elements_A()
    pool = list(A) + list(extra)
    for x in extra:
        if not system.is_member(x):
            return Check("group-axioms", False, "element violates the constraint", x)
    if not system.is_member(system.identity):
        return Check("group-axioms", False, "identity violates the constraint")
    members = set(A)
    for x in A:
        if not system.is_member(x):
            return Check("group-axioms", False, "enumerated element violates the constraint", x)
    for x in pool:
        xi = system.inv(x)
        if system.mul(x, xi) != system.identity or (xi not in members and not system.is_member(xi)):
            return Check("group-axioms", False, "inverse formula fails", x)
    for x, y in _pairs(pool, system.A_gens + list(extra), bound):
        z = system.mul(x, y)
        if z not in members and not system.is_member(z):
            return Check("group-axioms", False, "product leaves A", (x, y))
    if len(members) != system.order_A:
        return Check("group-axioms", False, f"|A| = {len(members)} but cosets give {system.order_A}")
    closed = closure(system.A_gens, system.mul, system.identity, max(system.order_A, 1))
    if set(closed) != members:
        return Check("group-axioms", False, "closure of the generators differs from the constraint set")
    return Check("group-axioms", True, f"|A| = {len(members)} two ways")


def verify_phi(system: WitnessSystem, bound: int | None = None) -> Check:
    """``φ`` is a surjective homomorphism with kernel ``M``."""
    st = system.setup
    A = system.elements_A()
    for x, y in _pairs(A, system.A_gens, bound):
        if system.phi(system.mul(x, y)) != K.mul(system.phi(x), system.phi(y)):
            return Check("phi", False, "not a homomorphism", (x, y))
    for g in st.L_elements:
        lifted = system.lift(g)
        if not system.is_member(lifted) or system.phi(lifted) != g:
            return Check("phi", False, "lift f_g fails", g)
    image = {system.phi(x) for x in A}
    if len(image) != st.L.order():
        return Check("phi", False, f"image has {len(image)} elements")
    kernel = {x for x in A if system.phi(x) == st.L.identity}
    direct = set(system.elements_M())
    if kernel != direct:
        return Check("phi", False, "kernel differs from the functions into K_lambda")
    if len(kernel) != st.K_lam.order() ** (st.nblocks * system.m):
        return Check("phi", False, f"|M| = {len(kernel)}")
    return Check("phi", True, f"|image| = {len(image)}, |M| = {len(kernel)}")


def core_in_A(system: WitnessSystem) -> set[Elem]:
    """``core_A(C)`` as the elements of ``C`` whose conjugates by coset reps stay in ``C``."""
    reps = list(system.coset_reps().values())
    out = set()
    for c in system.elements_C():
        if all(system.in_C(system.mul(system.mul(r, c), system.inv(r))) for r in reps):
            out.add(c)
    return out


def coset_action_on_C(system: WitnessSystem) -> PermutationGroup:
    """``A`` on the right cosets of ``C``, found by membership tests in ``C``."""
    reps = system.coset_reps()
    points = sorted(reps)
    pos = {mu: i for i, mu in enumerate(points)}
    images = []
    for a in system.A_gens:
        img = []
        for mu in points:
            x = system.mul(reps[mu], a)
            hit = [nu for nu in points if system.in_C(system.mul(x, system.inv(reps[nu])))]
            if len(hit) != 1:
                raise AssertionError("coset representatives are not a transversal")
            img.append(pos[hit[0]])
        images.append(tuple(img))
    return PermutationGroup(images, len(points))


def verify_core_and_action(system: WitnessSystem) -> Check:
    core = core_in_A(system)
    if core != set(system.elements_M()):
        return Check("core-and-action", False, f"core has {len(core)} elements, M has {system.order_M}")
    action = coset_action_on_C(system)
    phi = permutation_isomorphism(action, system.setup.L)
    if phi is None:
        return Check("core-and-action", False, "coset action not permutation isomorphic to L")
    return Check("core-and-action", True, f"core = M ({len(core)}), coset action ~ L via {phi}")


def verify_iota(system: WitnessSystem, bound: int | None = None) -> Check:
    C = system.elements_C()
    cset = set(C)
    if system.iota(system.identity) != system.identity:
        return Check("iota", False, "identity not fixed")
    for c in C:
        ic = system.iota(c)
        if ic not in cset:
            return Check("iota", False, "image outside C", c)
        if system.iota(ic) != c:
            return Check("iota", False, "iota is not an involution", c)
    for x, y in _pairs(C, [c for c in system.A_gens if system.in_C(c)], bound):
        if system.iota(system.mul(x, y)) != system.mul(system.iota(x), system.iota(y)):
            return Check("iota", False, "iota is not multiplicative", (x, y))
    return Check("iota", True, f"|C| = {len(C)}")


def invariant_subgroups_of_M(system: WitnessSystem, cap: int = 100_000) -> list[frozenset]:
    """Subgroups of ``M`` normalised by ``A``: closures of conjugacy orbits, then joins.

    Elements of ``M`` are indexed and subgroups held as bitmasks over a
    precomputed multiplication table.
    """
    M = system.elements_M()
    check_bound("|M| squared", len(M) ** 2)
    index = {x: i for i, x in enumerate(M)}
    table = [[index[system.mul(x, y)] for y in M] for x in M]
    conj = [[index[system.conj(x, a)] for x in M] for a in system.A_gens]
    e = index[system.identity]

    def close(gens: list[int]) -> int:
        elems = [e]
        mask = 1 << e
        i = 0
        while i < len(elems):
            row = table[elems[i]]
            i += 1
            for g in gens:
                y = row[g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    elems.append(y)
        return mask

    def orbit(x: int) -> list[int]:
        out, seen = [x], {x}
        i = 0
        while i < len(out):
            for c in conj:
                z = c[out[i]]
                if z not in seen:
                    seen.add(z)
                    out.append(z)
            i += 1
        return out

    def bits(mask: int) -> list[int]:
        return [i for i in range(len(M)) if mask >> i & 1]

    found: dict[int, list[int]] = {1 << e: []}
    cyclic: list[tuple[int, list[int]]] = []
    done = 1 << e
    for x in range(len(M)):
        if done >> x & 1:
            continue
        orb = orbit(x)
        for y in orb:  # the same closure arises from every conjugate
            done |= 1 << y
        mask = close(orb)
        if mask not in found:
            found[mask] = orb
            cyclic.append((mask, orb))
    frontier = list(found.items())
    while frontier:
        nxt = []
        for mask, gens in frontier:
            for cm, cg in cyclic:
                if cm & ~mask == 0:
                    continue
                jm = close(gens + cg)
                if jm not in found:
                    found[jm] = gens + cg
                    nxt.append((jm, found[jm]))
                    if len(found) > cap:
                        raise ResourceLimitError("invariant subgroups", len(found), cap)
        frontier = nxt
    out = [frozenset(M[i] for i in bits(mask)) for mask in found]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def verify_no_common_normal(system: WitnessSystem, use_iota_filter: bool = True) -> Check:
    subs = invariant_subgroups_of_M(system)
    survivors = [N for N in subs if not use_iota_filter or frozenset(system.iota(x) for x in N) == N]
    nontrivial = [N for N in survivors if len(N) > 1]
    if nontrivial:
        return Check("no-common-normal", False, f"{len(nontrivial)} nontrivial subgroups survive", sorted(nontrivial[0]))
    return Check("no-common-normal", True, f"{len(subs)} A-invariant subgroups of M, only 1 is iota-invariant")


def verify_all(system: WitnessSystem) -> list[Check]:
    return [
        verify_tau(system.setup),
        verify_group_axioms(system),
        verify_phi(system),
        verify_core_and_action(system),
        verify_iota(system),
        verify_no_common_normal(system),
    ]


# ------------------------------------------------------------ amalgam ball

@dataclass
class Ball:
    radius: int
    vertices: list[tuple[int, ...]]  # syllable words, innermost first
    edges: list[tuple[int, int]]
    action: PermutationGroup  # A on the ball, one generator per A generator
    valency: int
    order_A: int
    stabilizer_orders: list[int]  # |A_(ball k)| for k = 0..radius
    sphere_action: PermutationGroup  # A on the neighbours of the root

    @property
    def kernel_order(self) -> int:
        """Order of the kernel of ``A`` on the radius-1 sphere."""
        return self.stabilizer_orders[1] if self.radius >= 1 else self.order_A


def amalgam_ball(system: WitnessSystem, radius: int, cap: int = RADIUS_CAP) -> Ball:
    """Ball around the vertex ``A`` of the coset graph of ``A *_C B`` (with ``b = ι``).

    The vertex ``A b r_k b ... b r_1`` is stored as the word
    ``(μ_1, ..., μ_k)`` of points indexing the coset representatives
    ``r_μ`` of ``C`` in ``A``; ``μ_2, ..., μ_k`` differ from ``λ``.
    Right multiplication by ``a`` rewrites ``r_μ a = c r_ν`` and passes
    ``c^ι`` on to the next syllable, since ``b c = c^ι b``.
    """
    if radius < 0 or radius > cap:
        raise InputError(f"radius must be between 0 and {cap}")
    st = system.setup
    reps = system.coset_reps()
    inv_reps = {mu: system.inv(r) for mu, r in reps.items()}
    n = st.L.degree
    words: list[tuple[int, ...]] = [()]
    layer: list[tuple[int, ...]] = [()]
    for k in range(radius):
        nxt = []
        for w in layer:
            for mu in range(n):
                if k >= 1 and mu == 0:
                    continue
                nxt.append(w + (mu,))
        words.extend(nxt)
        layer = nxt
    check_bound("ball size", len(words))
    index = {w: i for i, w in enumerate(words)}

    def act(w: tuple[int, ...], a: Elem) -> tuple[int, ...]:
        out = []
        cur = a
        for mu in w:
            nu = cur[0][mu]
            c = system.mul(system.mul(reps[mu], cur), inv_reps[nu])
            if not system.in_C(c):
                raise AssertionError("rewriting left C")
            out.append(nu)
            cur = system.iota(c)
        return tuple(out)

    images = [tuple(index[act(w, a)] for w in words) for a in system.A_gens]
    action = PermutationGroup(images, len(words))
    edges = sorted((index[w[:-1]], index[w]) for w in words if w)
    if system.A is not None:
        order_A = len(system.A)
    else:
        order_M = len(closure(system.M_gens, system.mul, system.identity, system.order_M))
        order_A = order_M * st.L.order()
    stab = []
    for k in range(radius + 1):
        count = sum(1 for w in words if len(w) <= k)
        restricted = PermutationGroup([img[:count] for img in images], count)
        stab.append(order_A // restricted.order())
    sphere = sorted(index[w] for w in words if len(w) == 1)
    sphere_group = PermutationGroup([tuple(sphere.index(img[i]) for i in sphere) for img in images], len(sphere)) if sphere else PermutationGroup([], 1)
    return Ball(radius, words, edges, action, len(sphere), order_A, stab, sphere_group)


def verify_ball(system: WitnessSystem, ball: Ball) -> Check:
    """Radius-1 kernel equals ``M`` and the sphere action is ``(L, Λ)``."""
    if ball.radius < 1:
        return Check("ball", False, "radius 0 has no sphere")
    if ball.valency != system.setup.L.degree:
        return Check("ball", False, f"valency {ball.valency}")
    if ball.kernel_order != system.order_M:
        return Check("ball", False, f"kernel order {ball.kernel_order}, |M| = {system.order_M}")
    for x in system.M_gens:
        if not system.in_M(x):
            return Check("ball", False, "M generator outside M", x)
    if permutation_isomorphism(ball.sphere_action, system.setup.L) is None:
        return Check("ball", False, "sphere action not permutation isomorphic to L")
    return Check("ball", True, f"valency {ball.valency}, kernel order {ball.kernel_order}")


# -------------------------------------------------------- finite completion

def _abstract_iso(
    gens_x: Sequence, mul_x, id_x,
    elems_y: Sequence, mul_y, id_y,
    order: int, sub_x: set, sub_y: set,
    node_cap: int = 200_000,
) -> dict | None:
    """An isomorphism from <gens_x> onto the group listed in ``elems_y`` sending ``sub_x`` onto ``sub_y``.

    Images of the generators are searched; a candidate defines an
    isomorphism exactly when the subgroup of the direct product generated
    by the pairs ``(x_i, y_i)`` has ``order`` elements.
    """

    def elem_order(e, mul, ident) -> int:
        k, cur = 1, e
        while cur != ident:
            cur = mul(cur, e)
            k += 1
        return k

    orders_y: dict[int, list] = {}
    for y in elems_y:
        orders_y.setdefault(elem_order(y, mul_y, id_y), []).append(y)
    cands = [orders_y.get(elem_order(x, mul_x, id_x), []) for x in gens_x]
    nodes = 0
    for choice in itertools.product(*cands):
        nodes += 1
        if nodes > node_cap:
            raise ResourceLimitError("isomorphism search nodes", nodes, node_cap)
        pairs = list(zip(gens_x, choice))

        def pmul(a, b):
            return (mul_x(a[0], b[0]), mul_y(a[1], b[1]))

        try:
            graph = closure(pairs, pmul, (id_x, id_y), order)
        except ResourceLimitError:
            continue
        if len(graph) != order:
            continue
        mapping = dict(graph)
        if len(set(mapping.values())) != order:
            continue
        if {mapping[s] for s in sub_x} == set(sub_y):
            return mapping
    return None


def verify_completion(Gbar: PermutationGroup, Abar: PermutationGroup, bbar: Perm, system: WitnessSystem) -> Check:
    """Checks that ``(Gbar, Abar, bbar)`` is a finite quotient usable for a coset graph.

    Reason codes: ``b-in-A``, ``not-generated``, ``not-core-free``,
    ``b-inverse``, ``not-isomorphic``.
    """
    from .subgroups import core, intersection

    b = tuple(bbar)
    reasons = []
    if Abar.contains(b):
        reasons.append("b-in-A")
    H = PermutationGroup(Abar.gens + [b], Gbar.degree)
    if not (H.is_subgroup_of(Gbar) and H.order() == Gbar.order()):
        reasons.append("not-generated")
    if not Abar.is_subgroup_of(Gbar) or not core(Gbar, Abar).is_trivial():
        reasons.append("not-core-free")
    binv = K.inv(b)
    ac = Abar.chain()
    # b^-1 in A b A  iff  A b^-1 = A b a for some a in A
    if not any(ac.contains(K.mul(K.mul(binv, a), binv)) for a in Abar.elements()):
        reasons.append("b-inverse")
    if not reasons:
        Cbar = intersection(Abar, Abar.conjugate(b))
        try:
            iso = _abstract_iso(
                Abar.gens, K.mul, Abar.identity,
                system.elements_A(), system.mul, system.identity,
                system.order_A, set(Cbar.elements()), set(system.elements_C()),
            ) if Abar.order() == system.order_A else None
        except ResourceLimitError:
            iso = None
        if iso is None:
            reasons.append("not-isomorphic")
    if reasons:
        return Check("completion", False, ", ".join(reasons))
    return Check("completion", True, "all conditions hold")
