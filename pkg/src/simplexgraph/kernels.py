"""Hot-loop kernels, dispatched to the compiled extension when it imports.

``BACKEND`` names the active implementation (``"compiled"`` or ``"python"``).
Call :func:`set_backend` to switch, e.g. for benchmarking.
"""
from __future__ import annotations

import logging
from contextlib import contextmanager

from . import _purepy

log = logging.getLogger(__name__)

try:
    from . import _speedups
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None
    log.debug("compiled kernels unavailable, using pure-Python fallback")

_IMPLS = {"python": _purepy}
if _speedups is not None:
    _IMPLS["compiled"] = _speedups

BACKEND = "compiled" if _speedups is not None else "python"
_impl = _IMPLS[BACKEND]


def available_backends() -> list[str]:
    return sorted(_IMPLS)


def set_backend(name: str) -> None:
    global BACKEND, _impl
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    BACKEND = name
    _impl = _IMPLS[name]


@contextmanager
def using_backend(name: str):
    prev = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def lap(cost):
    return _impl.lap(cost)


def iso_search(sv, ep2, deg1, deg2, back_ptr, back_idx, tol, limit=0, skip_identity=False):
    return _impl.iso_search(sv, ep2, deg1, deg2, back_ptr, back_idx, tol, limit, skip_identity)


def subgraph_search(adj1, deg1, deg2, back_ptr, back_idx, limit=0):
    return _impl.subgraph_search(adj1, deg1, deg2, back_ptr, back_idx, limit)


def ggd_exact(pairdist, edges1, n, slack):
    return _impl.ggd_exact(pairdist, edges1, n, slack)
