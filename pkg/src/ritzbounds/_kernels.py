"""Kernel backend selection.

The compiled Cython kernels are used when importable; otherwise the NumPy
fallback takes over. ``RITZ_BOUNDS_KERNEL=python`` or ``=cython`` forces a
specific backend (the latter raises if the extension is missing). The active
module is exposed as :data:`active` so benchmarks and tests can compare
backends explicitly via :func:`load_backend`.
"""

import os

from . import _kernels_py
from .errors import RitzBoundsError


def load_backend(name):
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels_cy
        return _kernels_cy
    raise RitzBoundsError(f"unknown kernel backend {name!r}")


def _select():
    requested = os.environ.get("RITZ_BOUNDS_KERNEL", "auto").lower()
    if requested in ("auto", ""):
        try:
            return load_backend("cython"), "cython"
        except ImportError:
            return _kernels_py, "python"
    return load_backend(requested), requested


active, backend_name = _select()
