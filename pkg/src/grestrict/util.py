"""Small number-theory helpers."""

from __future__ import annotations

from sympy import factorint


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def is_prime_power(n: int, p: int | None = None) -> bool:
    """``n == p**k`` for some ``k >= 0`` (any prime ``p`` if not given)."""
    if n == 1:
        return True
    f = factorint(n)
    if len(f) != 1:
        return False
    return p is None or p in f
