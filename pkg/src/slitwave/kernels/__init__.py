"""Hot-kernel backend selection.

The compiled Cython module ``_fast`` is preferred when it imported
cleanly; the NumPy module ``_reference`` is the always-available
fallback.  ``SLITWAVE_BACKEND=python|cython`` forces a choice, and
:func:`set_backend` does the same programmatically (used by tests and
the benchmark).
"""

from __future__ import annotations

import os

from . import _reference

_BACKENDS = {"python": _reference}

try:  # compiled extension is optional
    from . import _fast  # type: ignore[attr-defined]
    _BACKENDS["cython"] = _fast
except ImportError:
    _fast = None

_FORCED = os.environ.get("SLITWAVE_BACKEND", "").strip().lower()
if _FORCED and _FORCED not in ("auto",):
    if _FORCED not in _BACKENDS:
        raise ImportError(
            f"SLITWAVE_BACKEND={_FORCED!r} requested but that backend is "
            f"unavailable (have: {', '.join(sorted(_BACKENDS))})")
    _active = _FORCED
else:
    _active = "cython" if "cython" in _BACKENDS else "python"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {available_backends()}")
    _active = name


def get() :
    """Module implementing the kernel API for the active backend."""
    return _BACKENDS[_active]
