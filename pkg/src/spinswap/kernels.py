"""Backend selection for the amplitude kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module with identical semantics takes over.  `BACKEND` records which lane is
active so benchmarks and tests can tell them apart.
"""

from __future__ import annotations

import numpy as np

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _kernels_py as _impl

    BACKEND = "python"

__all__ = ["BACKEND", "permanent", "determinant"]


def _as_square(matrix) -> np.ndarray:
    a = np.ascontiguousarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def permanent(matrix) -> complex:
    """Permanent of a square complex matrix (inclusion-exclusion kernel)."""
    return _impl.permanent_ryser(_as_square(matrix))


def determinant(matrix) -> complex:
    """Determinant of a square complex matrix (LU elimination kernel)."""
    return _impl.det_lu(_as_square(matrix))
