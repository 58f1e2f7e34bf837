"""Verdict engine for graph-restrictiveness of a transitive group.

Rules, in the order they are tried:

* a group that is not semiprimitive is not graph-restrictive;
* regular groups (constant 1), 2-transitive groups and groups of prime
  degree are graph-restrictive;
* otherwise each prime ``p`` dividing ``|L_x|`` is settled separately,
  first by the Sylow-order-``p`` rule (explicit constant), then by the
  ``O_p(L_x) = 1`` rule (constant unspecified).

The per-prime rules are also evaluated after a whole-group rule fires,
purely to report constants; they never change such a verdict.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from . import kernels as K
from .config import check_bound
from .errors import InputError, ResourceLimitError
from .group import Perm, PermutationGroup
from .perm import Permutation, perm_order
from .props import is_semiprimitive, is_two_transitive, semiprimitive_witness, semiregular_witness
from .subgroups import largest_normal_p_subgroup, p_part
from .util import prime_factors


class Overall(str, Enum):
    RESTRICTIVE = "Restrictive"
    NOT_RESTRICTIVE = "NotRestrictive"
    UNKNOWN = "Unknown"


class Status(str, Enum):
    CONSTANT = "Restrictive-with-constant"
    UNBOUNDED = "Restrictive-unbounded-constant"
    UNKNOWN = "Unknown"


# rule identifiers and the result each one rests on
RULES = {
    "not-semiprimitive": "graph-restrictive groups are semiprimitive",
    "regular": "regular local action: the arc stabiliser is trivial, c = 1",
    "two-transitive": "2-transitive groups are graph-restrictive (Trofimov-Weiss)",
    "prime-degree": "transitive groups of prime degree are graph-restrictive",
    "sylow-order-p": "|P| = p for P Sylow in L_x and <P, P^l> transitive for some l: c = p^6 (p odd), 16 (p = 2)",
    "trivial-op": "semiprimitive with O_p(L_x) = 1 is p-graph-restrictive",
}


@dataclass
class PrimeStatus:
    prime: int
    status: Status
    rule: str | None = None
    constant: int | None = None
    detail: str = ""


@dataclass
class TraceEntry:
    rule: str
    citation: str
    outcome: str


@dataclass
class Verdict:
    overall: Overall
    constant: int | None = None
    decided_by: str | None = None
    primes: list[PrimeStatus] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)
    witness: PermutationGroup | None = None  # set for NotRestrictive

    def to_dict(self) -> dict:
        return {
            "overall": self.overall.value,
            "constant": self.constant,
            "decided_by": self.decided_by,
            "primes": [dict(asdict(p), status=p.status.value) for p in self.primes],
            "trace": [asdict(t) for t in self.trace],
            "witness": [str(g) for g in self.witness.generators] if self.witness is not None else None,
        }


def sylow_constant(p: int) -> int:
    return 16 if p == 2 else p**6


def _require_transitive(L: PermutationGroup) -> None:
    if not L.is_transitive():
        raise InputError("verdict needs a transitive group")


# ------------------------------------------------------------- whole-group

def rule_not_semiprimitive(L: PermutationGroup) -> Verdict | None:
    _require_transitive(L)
    w = semiprimitive_witness(L)
    if w is None:
        return None
    sw = semiregular_witness(w)
    v = Verdict(Overall.NOT_RESTRICTIVE, decided_by="not-semiprimitive", witness=w)
    v.trace.append(TraceEntry("not-semiprimitive", RULES["not-semiprimitive"],
                              f"fired: normal subgroup <{', '.join(str(g) for g in w.generators)}> is intransitive; "
                              f"{sw.element} fixes {sw.fixed_point}"))
    return v


def rule_regular(L: PermutationGroup) -> bool:
    return L.is_transitive() and L.order() == L.degree


def rule_two_transitive(L: PermutationGroup) -> bool:
    return is_two_transitive(L)


def rule_prime_degree(L: PermutationGroup) -> bool:
    return L.is_transitive() and prime_factors(L.degree) == [L.degree]


# --------------------------------------------------------------- per prime

def _element_of_order_p(H: PermutationGroup, p: int) -> Perm | None:
    for g in H.iter_elements():
        o = perm_order(g)
        if o % p == 0:
            a = g
            for _ in range(1, o // p):
                a = K.mul(a, g)
            return a
    return None


def _powers(g: Perm) -> list[Perm]:
    out = [g]
    while True:
        nxt = K.mul(out[-1], g)
        if nxt == out[0]:
            return out
        out.append(nxt)


def _transitive_pair(n: int, P: list[Perm], Q: list[Perm]) -> bool:
    return len(K.orbit(0, P + Q)) == n


def rule_sylow_order_p(L: PermutationGroup, x: int, p: int, full_sweep: bool = True, bound: int | None = None) -> PrimeStatus | None:
    """Sylow ``p``-subgroup ``P`` of ``L_x`` of order ``p`` with ``<P, P^l>`` transitive.

    ``x`` is a 1-based point.  Conjugates ``P^t`` for the coset
    representatives ``t`` of ``L_x`` are tried first.  With
    ``full_sweep`` every ``L``-conjugate of ``P`` is then tried, which
    makes a negative answer exact.
    """
    Lx = L.stabilizer(x)
    order = Lx.order()
    if order % p:
        raise InputError(f"{p} does not divide the stabiliser order {order}")
    if p_part(order, p) != p:
        return None
    z = _element_of_order_p(Lx, p)
    assert z is not None
    n = L.degree
    reps = list(L.chain((x - 1,)).trans[0].values())
    for t in reps:
        other = K.conj(z, t, K.inv(t))
        if _transitive_pair(n, [z], [other]):
            return _sylow_status(p, z, other)
    if not full_sweep:
        return None
    # breadth-first over the conjugacy class of P, each subgroup keyed
    # by its least non-identity element
    seen = {_key(z)}
    queue = [z]
    ginv = [K.inv(g) for g in L.gens]
    i = 0
    while i < len(queue):
        y = queue[i]
        i += 1
        if _transitive_pair(n, [z], [y]):
            return _sylow_status(p, z, y)
        for g, gi in zip(L.gens, ginv):
            c = K.conj(y, g, gi)
            k = _key(c)
            if k not in seen:
                seen.add(k)
                queue.append(c)
                check_bound("Sylow conjugates", len(queue), bound)
    return None


def _key(g: Perm) -> Perm:
    return min(_powers(g)[:-1])


def _sylow_status(p: int, z: Perm, other: Perm) -> PrimeStatus:
    detail = f"P = <{Permutation.from_array(z)}>, P^l = <{Permutation.from_array(other)}>"
    return PrimeStatus(p, Status.CONSTANT, "sylow-order-p", sylow_constant(p), detail)


def rule_trivial_op(L: PermutationGroup, x: int, p: int, bound: int | None = None, check_hypothesis: bool = True) -> PrimeStatus | None:
    """Fires when ``O_p(L_x)`` is trivial; ``L`` must be semiprimitive."""
    if check_hypothesis and not is_semiprimitive(L):
        raise InputError("this rule needs a semiprimitive group")
    Lx = L.stabilizer(x)
    if Lx.order() % p:
        raise InputError(f"{p} does not divide the stabiliser order {Lx.order()}")
    O = largest_normal_p_subgroup(Lx, p, bound)
    if not O.is_trivial():
        return None
    return PrimeStatus(p, Status.UNBOUNDED, "trivial-op", None, f"O_{p}(L_x) = 1")


def prime_statuses(L: PermutationGroup, trace: list[TraceEntry], bound: int | None = None) -> list[PrimeStatus]:
    x = 1
    out = []
    for p in prime_factors(L.stabilizer(x).order()):
        try:
            st = rule_sylow_order_p(L, x, p, bound=bound)
            trace.append(TraceEntry("sylow-order-p", RULES["sylow-order-p"],
                                    f"p={p}: fired, c={st.constant}" if st else f"p={p}: did not fire"))
        except ResourceLimitError as e:
            st = None
            trace.append(TraceEntry("sylow-order-p", RULES["sylow-order-p"], f"p={p}: skipped, {e}"))
        if st is None:
            try:
                st = rule_trivial_op(L, x, p, bound, check_hypothesis=False)
                trace.append(TraceEntry("trivial-op", RULES["trivial-op"],
                                        f"p={p}: fired" if st else f"p={p}: did not fire"))
            except ResourceLimitError as e:
                trace.append(TraceEntry("trivial-op", RULES["trivial-op"], f"p={p}: skipped, {e}"))
                st = PrimeStatus(p, Status.UNKNOWN, None, None, f"resource limit: {e}")
        if st is None:
            st = PrimeStatus(p, Status.UNKNOWN, None, None, "no rule applies")
        out.append(st)
    return out


def _product_constant(primes: list[PrimeStatus]) -> int | None:
    c = 1
    for st in primes:
        if st.constant is None:
            return None
        c *= st.constant
    return c


def verdict(L: PermutationGroup, bound: int | None = None) -> Verdict:
    _require_transitive(L)
    v = rule_not_semiprimitive(L)
    if v is not None:
        return v
    trace = [TraceEntry("not-semiprimitive", RULES["not-semiprimitive"], "did not fire: semiprimitive")]
    decided = None
    const: int | None = None
    for name, test in (("regular", rule_regular), ("two-transitive", rule_two_transitive), ("prime-degree", rule_prime_degree)):
        fired = test(L)
        trace.append(TraceEntry(name, RULES[name], "fired" if fired else "did not fire"))
        if fired:
            decided = name
            if name == "regular":
                const = 1
            break
    primes = prime_statuses(L, trace, bound)
    if decided is None:
        if all(st.status is not Status.UNKNOWN for st in primes):
            decided = "per-prime"
            const = _product_constant(primes)
            overall = Overall.RESTRICTIVE
        else:
            overall = Overall.UNKNOWN
    else:
        overall = Overall.RESTRICTIVE
        if const is None:
            const = _product_constant(primes)
    return Verdict(overall, const, decided, primes, trace)
