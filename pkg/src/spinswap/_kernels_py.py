"""Pure-Python amplitude kernels, the fallback for the compiled extension.

Algorithms mirror spinswap._kernels exactly: a Gray-coded inclusion-exclusion
permanent and an LU determinant with partial pivoting.
"""

from __future__ import annotations

import numpy as np


def permanent_ryser(a: np.ndarray) -> complex:
    """Permanent via a Gray-coded walk over column subsets, O(2^n * n)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row_sum = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    prev_gray = 0
    subset_size = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            subset_size += 1
            row_sum += a[:, j]
        else:
            subset_size -= 1
            row_sum -= a[:, j]
        prod = complex(np.prod(row_sum))
        total += -prod if subset_size & 1 else prod
        prev_gray = gray
    return complex(-total if n & 1 else total)


def det_lu(a: np.ndarray) -> complex:
    """Determinant by LU elimination with partial pivoting; input is copied."""
    m = np.array(a, dtype=complex, copy=True)
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if m[p, k] == 0:
            return 0.0 + 0.0j
        if p != k:
            m[[k, p]] = m[[p, k]]
            sign = -sign
        factors = m[k + 1 :, k] / m[k, k]
        m[k + 1 :, k:] -= np.outer(factors, m[k, k:])
    det = complex(np.prod(np.diag(m)))
    return -det if sign < 0 else det
