"""Selection of the compute backend for the hot resampling loops.

Two implementations of the inner loops exist: a numba ``@njit`` one and a
pure-numpy fallback. The active backend is chosen once at import from the
``OBICUBIC_BACKEND`` environment variable ("numba" or "numpy"); without the
variable, numba is used when importable. ``set_backend`` switches at runtime
(used by tests and the backend benchmark).

Both backends compute the same arithmetic and agree to float precision;
the separable upscaling paths share their weight tables and agree bitwise.
"""

from __future__ import annotations

import os

_ENV_VAR = "OBICUBIC_BACKEND"
_VALID = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _initial_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice:
        if choice not in _VALID:
            raise ValueError(
                f"{_ENV_VAR} must be one of {_VALID}, got {choice!r}"
            )
        if choice == "numba" and not _numba_available():
            raise ImportError(f"{_ENV_VAR}=numba requested but numba is not installed")
        return choice
    return "numba" if _numba_available() else "numpy"


_active = _initial_backend()


def active_backend() -> str:
    """Name of the backend currently executing the hot loops."""
    return _active


def set_backend(name: str) -> str:
    """Switch backends at runtime; returns the previously active name."""
    global _active
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    if name == "numba" and not _numba_available():
        raise ImportError("numba backend requested but numba is not installed")
    previous = _active
    _active = name
    return previous
