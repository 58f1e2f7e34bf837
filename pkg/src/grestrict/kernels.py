"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when
``GRESTRICT_KERNELS=python`` is set, the pure-Python module is used.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("GRESTRICT_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels

mul = _impl.mul
inv = _impl.inv
conj = _impl.conj
orbit = _impl.orbit
orbits = _impl.orbits
closure = _impl.closure
strip = _impl.strip
expand = _impl.expand
class_labels = _impl.class_labels
