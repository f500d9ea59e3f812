"""Backend dispatch for the CSR kernels.

The numba backend is used when available; set GROWGRAPH_BACKEND=numpy to
force the pure-numpy fallback (or =numba to fail loudly if numba is
missing). Both backends compute identical values; see
benchmarks/kernel_bench.py for the speed comparison.
"""

from __future__ import annotations

import os
from types import ModuleType

_ENV_VAR = "GROWGRAPH_BACKEND"
_VALID = ("numba", "numpy")

_active: ModuleType | None = None
_active_name = ""


def _load(name: str) -> ModuleType:
    if name == "numba":
        from . import _kernels_numba
        return _kernels_numba
    from . import _kernels_numpy
    return _kernels_numpy


def _pick_default() -> str:
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


def set_backend(name: str | None = None) -> str:
    """Select the kernel backend; None re-reads the environment."""
    global _active, _active_name
    if name is None:
        name = os.environ.get(_ENV_VAR, "").strip().lower() or _pick_default()
    if name not in _VALID:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {_VALID}")
    _active = _load(name)
    _active_name = name
    return name


def backend_name() -> str:
    if _active is None:
        set_backend()
    return _active_name


def _mod() -> ModuleType:
    if _active is None:
        set_backend()
    assert _active is not None
    return _active


def bfs_distances(indptr, indices, source):
    return _mod().bfs_distances(indptr, indices, source)


def pairwise_distance_total(indptr, indices, sources):
    return _mod().pairwise_distance_total(indptr, indices, sources)


def triangle_counts(indptr, indices):
    return _mod().triangle_counts(indptr, indices)
