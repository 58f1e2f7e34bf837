"""Permutation groups backed by a deterministic Schreier-Sims chain."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import kernels as K
from .config import check_bound
from .errors import InputError
from .perm import Permutation, parse_generators

Perm = tuple  # 0-based image tuple


class StabChain:
    """Stabilizer chain with a full, prescribed base order.

    Every point appears in the base; levels whose basic orbit is a
    single point cost nothing.  Keeping the whole order (rather than a
    minimal base) is what lets :meth:`coset_min` pick lexicographically
    least coset representatives greedily.
    """

    def __init__(self, n: int, gens: Iterable[Perm], base_order: Sequence[int] | None = None):
        self.n = n
        self.ident = tuple(range(n))
        if base_order is None:
            base_order = range(n)
        base = list(base_order)
        seen = set(base)
        base += [x for x in range(n) if x not in seen]
        self.base = base
        self.levels = len(base)
        self.gens: list[list[Perm]] = [[] for _ in range(n)]
        self.trans: list[dict[int, Perm]] = [{b: self.ident} for b in base]
        self.tinv: list[dict[int, Perm]] = [{b: self.ident} for b in base]
        for g in dict.fromkeys(gens):
            if g == self.ident:
                continue
            j = self._first_moved(g)
            for lv in range(j + 1):
                self.gens[lv].append(g)
        for lv in range(self.levels):
            if self.gens[lv]:
                self._extend(lv)
        self._complete()

    def _first_moved(self, g: Perm) -> int:
        for lv, b in enumerate(self.base):
            if g[b] != b:
                return lv
        return self.levels

    def _extend(self, lv: int) -> None:
        t, ti, gens = self.trans[lv], self.tinv[lv], self.gens[lv]
        queue = list(t)
        i = 0
        while i < len(queue):
            beta = queue[i]
            i += 1
            u = t[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in t:
                    w = K.mul(u, s)
                    t[gamma] = w
                    ti[gamma] = K.inv(w)
                    queue.append(gamma)

    def _complete(self) -> None:
        checked: list[set] = [set() for _ in range(self.levels)]
        lv = self.levels - 1
        while lv >= 0:
            restart = False
            t, ti, gens = self.trans[lv], self.tinv[lv], self.gens[lv]
            for beta in list(t):
                u = t[beta]
                for si, s in enumerate(gens):
                    key = (beta, si)
                    if key in checked[lv]:
                        continue
                    checked[lv].add(key)
                    h = K.mul(K.mul(u, s), ti[s[beta]])
                    if h == self.ident:
                        continue
                    r, j = K.strip(h, self.base, self.tinv, lv + 1)
                    if r != self.ident:
                        for k in range(lv + 1, j + 1):
                            self.gens[k].append(r)
                            self._extend(k)
                        lv = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                lv -= 1

    def order(self) -> int:
        result = 1
        for t in self.trans:
            result *= len(t)
        return result

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        return K.strip(g, self.base, self.tinv, start)

    def contains(self, g: Perm) -> bool:
        return self.strip(g)[0] == self.ident

    def stabilizer_gens(self, k: int) -> list[Perm]:
        """Generators of the pointwise stabilizer of ``base[:k]``."""
        return list(self.gens[k]) if k < self.levels else []

    def elements(self) -> list[Perm]:
        levels = [[t[b]] + [u for x, u in t.items() if x != b] for b, t in zip(self.base, self.trans)]
        return K.expand(levels, self.n)

    def iter_elements(self) -> Iterator[Perm]:
        """Lazy enumeration; useful for early-exit searches."""
        active = [(b, t) for b, t in zip(self.base, self.trans) if len(t) > 1]

        def rec(k: int, acc: Perm) -> Iterator[Perm]:
            if k < 0:
                yield acc
                return
            b, t = active[k]
            for u in [t[b]] + [u for x, u in t.items() if x != b]:
                yield from rec(k - 1, K.mul(acc, u))

        yield from rec(len(active) - 1, self.ident)

    def coset_min(self, g: Perm) -> Perm:
        """Lexicographically least element of the right coset ``H g``.

        Needs the base order to be ``0, 1, ..., n-1``.
        """
        for b, t in zip(self.base, self.trans):
            if len(t) == 1:
                continue
            best = min(t, key=lambda beta: g[beta])
            if best != b:
                g = K.mul(t[best], g)
        return g

    def transversal_element(self, lv: int, point: int) -> Perm | None:
        return self.trans[lv].get(point)


class PermutationGroup:
    """A permutation group on ``{1..degree}`` given by generators."""

    def __init__(self, generators: Iterable[Permutation | Sequence[int]] = (), degree: int | None = None):
        arrs: list[Perm] = []
        for g in generators:
            arrs.append(g.array if isinstance(g, Permutation) else tuple(g))
        if degree is None:
            if not arrs:
                raise InputError("degree required for a group without generators")
            degree = len(arrs[0])
        for a in arrs:
            if len(a) != degree:
                raise InputError(f"generator of degree {len(a)} in a group of degree {degree}")
        self.degree = degree
        ident = tuple(range(degree))
        self.gens: list[Perm] = [a for a in dict.fromkeys(arrs) if a != ident]
        self._chains: dict[tuple[int, ...], StabChain] = {}

    @classmethod
    def from_text(cls, texts: Iterable[str] | str, degree: int | None = None) -> "PermutationGroup":
        gens = parse_generators(texts, degree)
        if degree is None:
            degree = max((g.degree for g in gens), default=1)
        return cls(gens, degree)

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation.from_array(g) for g in self.gens]

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def chain(self, base_prefix: Sequence[int] = ()) -> StabChain:
        key = tuple(base_prefix)
        ch = self._chains.get(key)
        if ch is None:
            ch = StabChain(self.degree, self.gens, key)
            self._chains[key] = ch
        return ch

    @cached_property
    def _order(self) -> int:
        return self.chain().order()

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def contains(self, g: Permutation | Perm) -> bool:
        a = g.array if isinstance(g, Permutation) else tuple(g)
        return len(a) == self.degree and self.chain().contains(a)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.gens

    def elements(self, bound: int | None = None) -> list[Perm]:
        check_bound("group order", self.order(), bound)
        return self.chain().elements()

    def iter_elements(self) -> Iterator[Perm]:
        return self.chain().iter_elements()

    def orbits0(self) -> list[list[int]]:
        return K.orbits(self.degree, list(self.gens))

    def orbits(self) -> list[tuple[int, ...]]:
        return [tuple(x + 1 for x in o) for o in self.orbits0()]

    def orbit(self, point: int) -> tuple[int, ...]:
        return tuple(sorted(x + 1 for x in K.orbit(point - 1, list(self.gens))))

    def is_transitive(self) -> bool:
        return len(K.orbit(0, list(self.gens))) == self.degree

    def stabilizer0(self, point: int) -> "PermutationGroup":
        return PermutationGroup(self.chain((point,)).stabilizer_gens(1), self.degree)

    def stabilizer(self, point: int) -> "PermutationGroup":
        return self.stabilizer0(point - 1)

    def pointwise_stabilizer0(self, points: Sequence[int]) -> "PermutationGroup":
        pts = list(dict.fromkeys(points))
        return PermutationGroup(self.chain(tuple(pts)).stabilizer_gens(len(pts)), self.degree)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        return self.pointwise_stabilizer0([p - 1 for p in points])

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and all(other.chain().contains(g) for g in self.gens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        ch = self.chain()
        return all(ch.contains(K.conj(h, g, K.inv(g))) for g in other.gens for h in self.gens)

    def subgroup(self, gens: Iterable[Perm]) -> "PermutationGroup":
        return PermutationGroup(gens, self.degree)

    def conjugate(self, g: Perm) -> "PermutationGroup":
        """``g^-1 H g``."""
        gi = K.inv(g)
        return PermutationGroup([K.conj(h, g, gi) for h in self.gens], self.degree)

    def random_free_generators(self) -> list[Perm]:
        """A small generating set taken from the strong generators."""
        return reduce_generators(self.gens, self.degree)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermutationGroup<{gens}; degree {self.degree}>"


def reduce_generators(gens: Sequence[Perm], n: int) -> list[Perm]:
    """Drop generators already in the group generated by earlier ones."""
    kept: list[Perm] = []
    ch: StabChain | None = None
    for g in gens:
        if ch is not None and ch.contains(g):
            continue
        if ch is None and g == tuple(range(n)):
            continue
        kept.append(g)
        ch = StabChain(n, kept)
    return kept


def generated_group(gens: Iterable[Perm], degree: int) -> PermutationGroup:
    return PermutationGroup(gens, degree)


def join(groups: Sequence[PermutationGroup]) -> PermutationGroup:
    n = groups[0].degree
    return PermutationGroup([g for G in groups for g in G.gens], n)


# convenience functions on 1-based points

def group_order(G: PermutationGroup) -> int:
    return G.order()


def orbits(G: PermutationGroup) -> list[tuple[int, ...]]:
    return G.orbits()


def point_stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    return G.stabilizer(point)
