"""Explicit copies of the four small semiprimitive groups left open at degree <= 13.

Catalog labels differ between catalogs, so the census recognises these
groups by permutation isomorphism to the constructions below.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Callable

from .group import PermutationGroup


def _on_labels(labels: list, maps: list[Callable]) -> PermutationGroup:
    index = {x: i for i, x in enumerate(labels)}
    return PermutationGroup([tuple(index[f(x)] for x in labels) for f in maps], len(labels))


def _cycle3(x: int) -> int:
    return (x + 1) % 3


def _swap01(x: int) -> int:
    return {0: 1, 1: 0}.get(x, x)


def sym3_wreath_product_action() -> PermutationGroup:
    """``Sym(3) wr Sym(2)`` on ``{0,1,2}^2``, order 72."""
    pts = list(product(range(3), repeat=2))
    return _on_labels(pts, [lambda v: (_cycle3(v[0]), v[1]), lambda v: (_swap01(v[0]), v[1]), lambda v: (v[1], v[0])])


def affine_inversion() -> PermutationGroup:
    """Translations of ``F_3^2`` extended by ``v -> -v``, order 18."""
    pts = list(product(range(3), repeat=2))
    return _on_labels(pts, [lambda v: ((v[0] + 1) % 3, v[1]), lambda v: (v[0], (v[1] + 1) % 3),
                            lambda v: ((-v[0]) % 3, (-v[1]) % 3)])


def sym5_on_pairs() -> PermutationGroup:
    """``Sym(5)`` on the 10 unordered pairs."""
    pts = [frozenset(c) for c in combinations(range(5), 2)]
    return _on_labels(pts, [lambda s: frozenset((x + 1) % 5 for x in s), lambda s: frozenset(map(_swap01, s))])


def sym4_on_ordered_pairs() -> PermutationGroup:
    """``Sym(4)`` on the 12 ordered pairs of distinct points."""
    pts = list(permutations(range(4), 2))
    return _on_labels(pts, [lambda v: tuple((x + 1) % 4 for x in v), lambda v: tuple(map(_swap01, v))])


EXCEPTIONS: dict[str, Callable[[], PermutationGroup]] = {
    "Sym(3) wr Sym(2), product action, degree 9": sym3_wreath_product_action,
    "3^2:2 (inversion), degree 9": affine_inversion,
    "Sym(5) on unordered pairs, degree 10": sym5_on_pairs,
    "Sym(4) on ordered pairs, degree 12": sym4_on_ordered_pairs,
}


def exception_groups() -> dict[str, PermutationGroup]:
    return {name: build() for name, build in EXCEPTIONS.items()}
