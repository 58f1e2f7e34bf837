"""Permutations on ``{1..n}`` and their text formats.

Two input formats are accepted.  Cycle notation such as ``(1 3)(2 4)``
uses whitespace-separated points and ``()`` for the identity; an image
list such as ``3,4,1,2`` gives the image of each point in order.  Points
are 1-based in every public interface and stored 0-based.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Sequence

from . import kernels as K
from .errors import ParseError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """An immutable permutation; ``p * q`` applies ``p`` first."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int]):
        a = tuple(int(x) - 1 for x in images)
        if sorted(a) != list(range(len(a))):
            raise ParseError(f"not a permutation of 1..{len(a)}: {list(images)}")
        self._a = a
        self._hash = hash(a)

    @classmethod
    def from_array(cls, arr: Sequence[int]) -> "Permutation":
        """Wrap a 0-based image tuple without validation."""
        p = cls.__new__(cls)
        p._a = tuple(arr)
        p._hash = hash(p._a)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls.from_array(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        arr = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [int(x) for x in cyc]
            for x in pts:
                if not 1 <= x <= n:
                    raise ParseError(f"point {x} outside 1..{n}")
                if x in seen:
                    raise ParseError(f"point {x} repeated")
                seen.add(x)
            for i, x in enumerate(pts):
                arr[x - 1] = pts[(i + 1) % len(pts)] - 1
        return cls.from_array(arr)

    @property
    def array(self) -> tuple[int, ...]:
        return self._a

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._a)

    def __call__(self, x: int) -> int:
        return self._a[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation.from_array(K.mul(self._a, other._a))

    def __invert__(self) -> "Permutation":
        return Permutation.from_array(K.inv(self._a))

    def inverse(self) -> "Permutation":
        return ~self

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else ~self
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return Permutation.from_array(K.conj(self._a, g._a, K.inv(g._a)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._a == other._a

    def __lt__(self, other: "Permutation") -> bool:
        return self._a < other._a

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._a))

    def cycles(self) -> list[tuple[int, ...]]:
        return [tuple(x + 1 for x in c) for c in _cycles(self._a)]

    def order(self) -> int:
        return perm_order(self._a)

    def fixed_points(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._a) if i == x]

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._a) if i != x]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def _cycles(a: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(cyc)
    return out


def perm_order(a: Sequence[int]) -> int:
    return lcm(1, *(len(c) for c in _cycles(a)))


def cycle_type(a: Sequence[int]) -> tuple[int, ...]:
    """Sorted cycle lengths, fixed points included."""
    lengths = [len(c) for c in _cycles(a)]
    lengths += [1] * (len(a) - sum(lengths))
    return tuple(sorted(lengths))


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation or an image list.

    Without ``degree`` the degree is the largest point mentioned (cycle
    notation) or the list length (image list).
    """
    s = text.strip()
    if not s:
        raise ParseError("empty permutation text")
    if s.startswith("("):
        return _parse_cycles(s, degree)
    return _parse_images(s, degree)


def _parse_cycles(s: str, degree: int | None) -> Permutation:
    pos = 0
    cycles: list[list[int]] = []
    compact = re.sub(r"\s+(?=\()|(?<=\))\s+", "", s)
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise ParseError(f"unexpected text {compact[pos:m.start()]!r} in {s!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        try:
            pts = [int(tok) for tok in body.split()]
        except ValueError:
            raise ParseError(f"non-integer point in cycle ({body})") from None
        cycles.append(pts)
    if pos != len(compact):
        raise ParseError(f"unbalanced or trailing text in {s!r}")
    top = max((x for c in cycles for x in c), default=0)
    n = top if degree is None else degree
    if degree is not None and top > degree:
        raise ParseError(f"point {top} exceeds degree {degree}")
    if any(x < 1 for c in cycles for x in c):
        raise ParseError("points must be positive")
    return Permutation.from_cycles(cycles, max(n, 1) if degree is None else n)


def _parse_images(s: str, degree: int | None) -> Permutation:
    try:
        imgs = [int(tok) for tok in s.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"malformed image list {s!r}") from None
    if degree is not None and len(imgs) != degree:
        if len(imgs) > degree:
            raise ParseError(f"image list of length {len(imgs)} exceeds degree {degree}")
        imgs += list(range(len(imgs) + 1, degree + 1))
    return Permutation(imgs)


def parse_generators(texts: Iterable[str] | str, degree: int | None = None) -> list[Permutation]:
    """Parse several permutations and bring them to a common degree.

    A single string is split on ``;``.
    """
    if isinstance(texts, str):
        texts = [t for t in texts.split(";") if t.strip()]
    texts = list(texts)
    if degree is None:
        parsed = [parse_permutation(t) for t in texts]
        degree = max((p.degree for p in parsed), default=1)
    return [parse_permutation(t, degree) for t in texts]
