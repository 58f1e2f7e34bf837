"""Quotients of 2x2 linear groups acting on scalar classes of nonzero vectors.

``G`` is the group of matrices over ``F_p`` whose determinant lies in the
subgroup of order ``r`` of ``F_p^*`` (so ``SL(2,p) <= G``), and ``K`` is the
group of scalars of order ``k``.  ``L = G/K`` acts faithfully on the
``K``-orbits of ``F_p^2 \\ {0}``; row vectors, matrices on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime, primitive_root

from . import kernels as K
from .config import check_bound
from .errors import InputError, InvariantViolation
from .group import PermutationGroup

Mat = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]


@dataclass
class LinearQuotient:
    p: int
    r: int
    k: int
    group: PermutationGroup
    points: list[tuple[tuple[int, int], ...]]  # each K-orbit, sorted
    alpha: int  # orbit of e1
    beta: int  # orbit of e2
    P_alpha: PermutationGroup  # image of the lower unitriangular matrices
    P_beta: PermutationGroup  # image of the upper unitriangular matrices
    stabilizer: PermutationGroup  # L_alpha

    @property
    def degree(self) -> int:
        return len(self.points)


def _apply(v: tuple[int, int], m: Mat, p: int) -> tuple[int, int]:
    a, b, c, d = m
    return ((v[0] * a + v[1] * c) % p, (v[0] * b + v[1] * d) % p)


def _check_params(p: int, r: int, k: int) -> None:
    if not isprime(p):
        raise InputError(f"p = {p} is not prime")
    if r < 1 or (p - 1) % r:
        raise InputError(f"det index {r} does not divide p - 1 = {p - 1}")
    if k < 1 or gcd(2 * r, p - 1) % k:
        raise InputError(f"center order {k} does not divide gcd(2r, p - 1) = {gcd(2 * r, p - 1)}")


def linear_quotient(p: int, r: int, k: int, bound: int | None = None) -> LinearQuotient:
    """Build ``L = G/K`` on the ``K``-orbits and assert its point-stabilizer shape.

    The stabilizer of the orbit of ``e1`` must have order ``p r``, a normal
    subgroup of order ``p`` and a centralizer of that subgroup equal to it,
    i.e. be a Frobenius group ``C_p : C_r``.
    """
    _check_params(p, r, k)
    order = p * (p * p - 1) * r // k
    check_bound("group order", order, bound)
    w = primitive_root(p) if p > 2 else 1
    scalars = sorted({pow(w, (p - 1) // k * i, p) for i in range(k)})
    vectors = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    orbit_of: dict[tuple[int, int], tuple] = {}
    for v in vectors:
        orbit_of[v] = tuple(sorted(((v[0] * s) % p, (v[1] * s) % p) for s in scalars))
    e1, e2 = (1, 0), (0, 1)
    rest = sorted(set(orbit_of.values()) - {orbit_of[e1], orbit_of[e2]})
    points = [orbit_of[e1], orbit_of[e2]] + rest
    index = {o: i for i, o in enumerate(points)}

    def perm(m: Mat) -> tuple[int, ...]:
        return tuple(index[orbit_of[_apply(o[0], m, p)]] for o in points)

    det_gen = pow(w, (p - 1) // r, p)
    lower, upper = (1, 0, 1, 1), (1, 1, 0, 1)
    mats = [lower, upper] + ([(1, 0, 0, det_gen)] if r > 1 else [])
    L = PermutationGroup([perm(m) for m in mats], len(points))
    P_alpha = PermutationGroup([perm(lower)], len(points))
    P_beta = PermutationGroup([perm(upper)], len(points))
    stab = L.stabilizer0(0)
    out = LinearQuotient(p, r, k, L, points, 0, 1, P_alpha, P_beta, stab)
    _assert_shape(out, order)
    return out


def _assert_shape(lq: LinearQuotient, order: int) -> None:
    p, r = lq.p, lq.r
    L, S, P = lq.group, lq.stabilizer, lq.P_alpha
    if L.order() != order:
        raise InvariantViolation(f"|L| = {L.order()}, expected {order}")
    if S.order() != p * r:
        raise InvariantViolation(f"|L_alpha| = {S.order()}, expected {p * r}")
    if P.order() != p or not P.is_normal_in(S):
        raise InvariantViolation("P_alpha is not a normal subgroup of order p")
    x = P.gens[0]
    centralizer = [g for g in S.elements() if K.conj(x, g, K.inv(g)) == x]
    if len(centralizer) != p:
        raise InvariantViolation("L_alpha is not a Frobenius group with kernel P_alpha")
    if not PermutationGroup(list(P.gens) + list(lq.P_beta.gens), L.degree).is_transitive():
        raise InvariantViolation("the two root subgroups do not generate a transitive group")


def build_linear_quotient(p: int, det_index: int, center_order: int, bound: int | None = None) -> PermutationGroup:
    """The permutation group ``L`` of :func:`linear_quotient`."""
    return linear_quotient(p, det_index, center_order, bound).group
