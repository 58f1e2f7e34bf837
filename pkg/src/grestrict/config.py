"""Resource bounds.

One bound governs every enumerative step: the largest group (or coset
space, or element pool) the code will list element by element.  The
default can be raised with the ``GRESTRICT_MAX_ORDER`` environment
variable.
"""

from __future__ import annotations

import os

from .errors import ResourceLimitError

DEFAULT_MAX_ORDER = 10**6
ENV_VAR = "GRESTRICT_MAX_ORDER"

# hard cap on backtracking nodes in the permutation-isomorphism search
MAX_SEARCH_NODES = 200_000


def max_order() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be positive")
    return value


def check_bound(what: str, value: int, bound: int | None = None) -> None:
    limit = max_order() if bound is None else bound
    if value > limit:
        raise ResourceLimitError(what, value, limit)
