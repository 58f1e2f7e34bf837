"""Permutation-group tools for deciding graph-restrictiveness of small transitive groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import DataError, GrestrictError, InputError, InvariantViolation, ParseError, ResourceLimitError
from .group import PermutationGroup, StabChain
from .kernels import BACKEND
from .perm import Permutation, parse_generators, parse_permutation

__all__ = [
    "BACKEND",
    "DataError",
    "GrestrictError",
    "InputError",
    "InvariantViolation",
    "ParseError",
    "Permutation",
    "PermutationGroup",
    "ResourceLimitError",
    "StabChain",
    "parse_generators",
    "parse_permutation",
]
