"""Coset graphs ``Cos(G, A, b)`` and the local structure of arc-transitive actions.

Vertices are the right cosets of ``A``, labelled ``0..N-1`` with vertex 0
the coset ``A`` itself; edges are the pairs ``{Ag, Abg}``.  Everything past
construction works on the permutation group induced on the vertices, so the
checks apply to any faithful vertex-transitive action given with its graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import kernels as K
from .config import check_bound
from .errors import InputError, InvariantViolation
from .group import Perm, PermutationGroup
from .props import is_semiprimitive, permutation_isomorphism, restrict
from .subgroups import action_kernel, coset_action, core, intersection, is_p_group, largest_normal_p_subgroup
from .util import prime_factors

ARC_CHECK_LIMIT = 10_000


class CosetGraphError(InputError):
    """One or more construction preconditions failed; ``failed`` names them."""

    def __init__(self, failed: list[str]):
        self.failed = list(failed)
        super().__init__("coset graph preconditions failed: " + ", ".join(self.failed))


@dataclass
class GraphAction:
    """A graph with a group acting on its vertices ``0..N-1``."""

    action: PermutationGroup
    adjacency: list[list[int]]
    base: int = 0
    partner: int = 0  # the other end of the representative arc

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @property
    def valency(self) -> int:
        return len(self.adjacency[self.base])

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((v, w) for v, nb in enumerate(self.adjacency) for w in nb if v < w)

    def neighbours(self, v: int) -> list[int]:
        return self.adjacency[v]


@dataclass
class CosetGraph(GraphAction):
    """``Cos(G, A, b)`` with the coset action that labels it."""

    G: PermutationGroup | None = None
    A: PermutationGroup | None = None
    b: Perm | None = None
    reps: list[Perm] = field(default_factory=list, repr=False)


def _named_failures(G: PermutationGroup, A: PermutationGroup, b: Perm) -> list[str]:
    failed = []
    if not A.is_subgroup_of(G):
        return ["A-subgroup-of-G"]
    if not G.contains(b):
        return ["b-in-G"]
    if A.contains(b):
        failed.append("b-not-in-A")
    if PermutationGroup(list(A.gens) + [b], G.degree).order() != G.order():
        failed.append("generates")
    if not core(G, A).is_trivial():
        failed.append("core-free")
    return failed


def build_coset_graph(G: PermutationGroup, A: PermutationGroup, b: Perm, bound: int | None = None) -> CosetGraph:
    """Build ``Cos(G, A, b)`` after checking every precondition by name."""
    b = tuple(b)
    failed = _named_failures(G, A, b)
    if "A-subgroup-of-G" in failed or "b-in-G" in failed:
        raise CosetGraphError(failed)
    check_bound("vertex count", G.order() // A.order(), bound)
    ca = coset_action(G, A, bound)
    root = sorted({ca.coset_of(K.mul(b, a)) for a in A.iter_elements()})
    if ca.coset_of(K.inv(b)) not in root:
        failed.append("b-inverse-in-AbA")
    if failed:
        raise CosetGraphError(failed)
    adjacency = []
    for r in ca.reps:
        g = ca.act(r)
        adjacency.append(sorted(g[x] for x in root))
    graph = CosetGraph(ca.group, adjacency, 0, ca.coset_of(b), G, A, b, ca.reps)
    _check_simple(graph)
    return graph


def _check_simple(gr: GraphAction) -> None:
    for v, nb in enumerate(gr.adjacency):
        if v in nb or len(set(nb)) != len(nb):
            raise InvariantViolation(f"vertex {v} has a loop or repeated neighbour")
        for w in nb:
            if v not in gr.adjacency[w]:
                raise InvariantViolation(f"edge {v}-{w} is not symmetric")


def graph_from_action(action: PermutationGroup, adjacency: Sequence[Sequence[int]], base: int = 0, partner: int | None = None) -> GraphAction:
    """Wrap a vertex action and a graph it preserves."""
    adj = [sorted(nb) for nb in adjacency]
    if len(adj) != action.degree:
        raise InputError("adjacency size differs from the action degree")
    for g in action.gens:
        for v, nb in enumerate(adj):
            if sorted(g[w] for w in nb) != adj[g[v]]:
                raise InputError("the group does not preserve the graph")
    gr = GraphAction(action, adj, base, adj[base][0] if partner is None else partner)
    _check_simple(gr)
    return gr


def is_connected(gr: GraphAction) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        for w in gr.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == gr.order


def is_arc_transitive(gr: GraphAction, limit: int = ARC_CHECK_LIMIT) -> bool:
    """Orbit of the representative arc under the generators covers every arc."""
    arcs = 2 * len(gr.edges)
    check_bound("arc count", arcs, limit)
    start = (gr.partner, gr.base)
    seen = {start}
    stack = [start]
    gens = list(gr.action.gens)
    while stack:
        u, v = stack.pop()
        for g in gens:
            a = (g[u], g[v])
            if a not in seen:
                seen.add(a)
                stack.append(a)
    return len(seen) == arcs and all(v in gr.adjacency[u] for u, v in seen)


def arc_reverser(G: PermutationGroup, u: int, v: int) -> Perm | None:
    """An element swapping the points ``u`` and ``v`` (0-based), if one exists."""
    ch = G.chain((u, v))
    t = ch.transversal_element(0, v)
    if t is None:
        return None
    w = K.inv(t)[u]
    s = ch.transversal_element(1, w)
    if s is None:
        return None
    return K.mul(s, t)


# ------------------------------------------------------------ local analysis

@dataclass
class LocalAnalysis:
    """Stabilizers and kernels around the arc ``(u, v)``."""

    v: int
    u: int
    neighbourhood: list[int]
    local_group: PermutationGroup  # G_v on its neighbourhood, relabelled 0..k-1
    vertex_stabilizer: PermutationGroup
    kernel_v: PermutationGroup  # G_v^[1]
    kernel_u: PermutationGroup  # G_u^[1]
    kernel_uv: PermutationGroup  # G_u^[1] meet G_v^[1]
    arc_stabilizer: PermutationGroup  # G_uv
    edge_stabilizer: PermutationGroup  # setwise stabilizer of {u, v}
    arc_on_u: PermutationGroup  # G_uv induced on the neighbourhood of u
    coset_local_group: PermutationGroup | None = None
    isomorphism: list[int] | None = None

    def summary(self) -> dict:
        return {
            "vertex": self.v,
            "arc": [self.u, self.v],
            "valency": len(self.neighbourhood),
            "local_order": self.local_group.order(),
            "vertex_stabilizer_order": self.vertex_stabilizer.order(),
            "kernel_v_order": self.kernel_v.order(),
            "kernel_uv_order": self.kernel_uv.order(),
            "arc_stabilizer_order": self.arc_stabilizer.order(),
            "edge_stabilizer_order": self.edge_stabilizer.order(),
        }


def local_pair(gr: GraphAction) -> LocalAnalysis:
    """Local action at the base vertex, with kernels, computed by restriction.

    For a coset graph the local group is also computed as ``A`` on the cosets
    of ``A`` meet ``A^b``, and the two are required to be permutation
    isomorphic.
    """
    X = gr.action
    v, u = gr.base, gr.partner
    Nv, Nu = gr.adjacency[v], gr.adjacency[u]
    Gv = X.stabilizer0(v)
    local, images = restrict(Gv, Nv)
    kv = action_kernel(Gv, images, len(Nv))
    if Gv.order() != local.order() * kv.order():
        raise InvariantViolation("vertex stabilizer order is not local order times kernel order")
    ku = X.pointwise_stabilizer0([u] + Nu)
    kuv = X.pointwise_stabilizer0([v, u] + Nv + Nu)
    Guv = X.pointwise_stabilizer0([u, v])
    arc_on_u, _ = restrict(Guv, Nu)
    swap = arc_reverser(X, u, v)
    edge = PermutationGroup(list(Guv.gens) + ([swap] if swap is not None else []), X.degree)
    out = LocalAnalysis(v, u, list(Nv), local, Gv, kv, ku, kuv, Guv, edge, arc_on_u)
    if isinstance(gr, CosetGraph) and gr.A is not None:
        A = gr.A
        meet = intersection(A, A.conjugate(gr.b))
        out.coset_local_group = coset_action(A, meet).group
        out.isomorphism = permutation_isomorphism(local, out.coset_local_group)
        if out.isomorphism is None:
            raise InvariantViolation("restricted local action and coset action disagree")
    return out


def is_locally(gr: GraphAction, L: PermutationGroup) -> bool:
    local = local_pair(gr).local_group
    return local.order() == L.order() and permutation_isomorphism(local, L) is not None


# ------------------------------------------------------------ local checks

@dataclass
class LocalCheck:
    name: str
    status: str  # "holds", "fails" or "not-applicable"
    detail: str
    order: int | None = None
    factorization: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fails"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "order": self.order, "factorization": {str(p): e for p, e in sorted(self.factorization.items())}}


def _factorization(n: int) -> dict[int, int]:
    out = {}
    for p in prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def check_thompson_wielandt(gr: GraphAction, la: LocalAnalysis | None = None) -> LocalCheck:
    """With a semiprimitive local action, ``G_uv^[1]`` must have prime-power order."""
    la = la or local_pair(gr)
    name = "kernel-uv-prime-power"
    if not is_semiprimitive(la.local_group):
        return LocalCheck(name, "not-applicable", "local action is not semiprimitive")
    n = la.kernel_uv.order()
    fac = _factorization(n)
    if n == 1:
        return LocalCheck(name, "holds", "trivial", n, fac)
    if len(fac) == 1:
        return LocalCheck(name, "holds", f"order {n} is a power of {next(iter(fac))}", n, fac)
    return LocalCheck(name, "fails", f"order {n} has {len(fac)} prime divisors", n, fac)


def check_local_op(gr: GraphAction, la: LocalAnalysis | None = None) -> LocalCheck:
    """A nontrivial p-group ``G_uv^[1]`` forces ``O_p`` of ``G_uv`` on ``Γ(u)`` to be nontrivial."""
    la = la or local_pair(gr)
    name = "arc-local-op-nontrivial"
    if not la.local_group.is_transitive():
        return LocalCheck(name, "not-applicable", "local action is not transitive")
    n = la.kernel_uv.order()
    fac = _factorization(n)
    if n == 1:
        return LocalCheck(name, "not-applicable", "kernel is trivial", n, fac)
    if len(fac) != 1:
        return LocalCheck(name, "not-applicable", f"kernel order {n} is not a prime power", n, fac)
    p = next(iter(fac))
    if not is_p_group(la.kernel_uv, p):  # pragma: no cover - guarded above
        raise InvariantViolation("prime-power order without being a p-group")
    op = largest_normal_p_subgroup(la.arc_on_u, p)
    if op.is_trivial():
        return LocalCheck(name, "fails", f"O_{p} of the arc stabilizer on Γ(u) is trivial", n, fac)
    return LocalCheck(name, "holds", f"O_{p} has order {op.order()}", n, fac)


# ------------------------------------------------------------------ export

def to_adjacency_text(gr: GraphAction) -> str:
    """One line per vertex: ``v: n1 n2 ...``."""
    return "".join(f"{v}: {' '.join(map(str, nb))}\n" for v, nb in enumerate(gr.adjacency))


def to_edge_list_text(gr: GraphAction) -> str:
    """One line per edge: ``v w`` with ``v < w``."""
    return "".join(f"{v} {w}\n" for v, w in gr.edges)


def parse_adjacency_text(text: str) -> list[list[int]]:
    adj: dict[int, list[int]] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        head, _, rest = line.partition(":")
        adj[int(head)] = [int(x) for x in rest.split()]
    return [adj[v] for v in range(len(adj))]


def action_graph(G: PermutationGroup, v: int, u: int, bound: int | None = None) -> CosetGraph:
    """``Cos(G, G_v, b)`` for a vertex action and an arc ``(v, u)`` (0-based).

    ``b`` is an element swapping ``u`` and ``v``; the resulting coset graph is
    the orbital graph of that arc.
    """
    b = arc_reverser(G, u, v)
    if b is None:
        raise InputError("no element reverses the arc")
    return build_coset_graph(G, G.stabilizer0(v), b, bound)
