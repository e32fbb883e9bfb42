"""Kernel backend selection.

The stencil/cross-product/tabulation kernels exist twice: numba-jitted
(`_kernels_numba`) and pure numpy (`_kernels_numpy`), with identical
signatures.  Selection happens once at import time:

* ``LLGBDF_BACKEND=numpy``  -- force the numpy path,
* ``LLGBDF_BACKEND=numba``  -- require numba (raises if unavailable),
* unset                     -- numba when importable, numpy otherwise.

``use(name)`` rebinds at runtime (used by the benchmark and by tests); hot
modules look kernels up through this module, so a rebind takes effect
immediately.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_BACKENDS = {"numpy": _kernels_numpy}

try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
except ImportError:  # pragma: no cover - exercised only without numba
    _kernels_numba = None


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use(name: str):
    """Select the kernel backend by name and return its module."""
    global kernels, active
    if name not in _BACKENDS:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        )
    kernels = _BACKENDS[name]
    active = name
    return kernels


def _initial() -> str:
    requested = os.environ.get("LLGBDF_BACKEND", "").strip().lower()
    if requested:
        if requested not in _BACKENDS:
            raise ImportError(
                f"LLGBDF_BACKEND={requested!r} but that backend is not "
                f"available (have: {available_backends()})"
            )
        return requested
    return "numba" if "numba" in _BACKENDS else "numpy"


active: str = _initial()
kernels = _BACKENDS[active]
