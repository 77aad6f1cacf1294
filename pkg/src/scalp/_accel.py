"""Kernel backend selection.

The hot loops (moment precomputation and the per-cluster assignment pass)
exist twice: a numba-compiled version and a pure-numpy fallback. The active
backend is resolved, in order, from `set_backend()`, the SCALP_BACKEND
environment variable ("numba" or "numpy"), and finally numba availability.
"""

import os

_forced: str | None = None
_VALID = ("numba", "numpy")


def set_backend(name: str | None) -> None:
    """Force a backend for this process ("numba", "numpy", or None for auto)."""
    global _forced
    if name is not None and name not in _VALID:
        raise ValueError(f"unknown backend {name!r}, expected one of {_VALID}")
    _forced = name


def active_backend() -> str:
    if _forced is not None:
        return _forced
    env = os.environ.get("SCALP_BACKEND", "").strip().lower()
    if env in _VALID:
        return env
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


def kernels():
    """Return the module holding the active kernel implementations."""
    if active_backend() == "numba":
        from . import _kernels_numba
        return _kernels_numba
    from . import _kernels_numpy
    return _kernels_numpy
