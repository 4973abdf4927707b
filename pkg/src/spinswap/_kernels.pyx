# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude kernels: inclusion-exclusion permanent and LU determinant.

Same contracts as spinswap._kernels_py; selected at import by spinswap.kernels.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def permanent_ryser(cnp.complex128_t[:, ::1] a):
    """Permanent via a Gray-coded walk over column subsets, O(2^n * n)."""
    cdef Py_ssize_t n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row_sum_arr = np.zeros(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] row_sum = row_sum_arr
    cdef double complex total = 0
    cdef double complex prod
    cdef unsigned long long k, gray, prev_gray = 0, diff, bit
    cdef unsigned long long limit = (<unsigned long long> 1) << n
    cdef Py_ssize_t i, j, subset_size = 0
    for k in range(1, limit):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = 0
        bit = 1
        while not (diff & bit):
            bit <<= 1
            j += 1
        # one column enters or leaves the subset; update row sums in O(n)
        if gray & bit:
            subset_size += 1
            for i in range(n):
                row_sum[i] = row_sum[i] + a[i, j]
        else:
            subset_size -= 1
            for i in range(n):
                row_sum[i] = row_sum[i] - a[i, j]
        prod = 1
        for i in range(n):
            prod = prod * row_sum[i]
        if subset_size & 1:
            total = total - prod
        else:
            total = total + prod
        prev_gray = gray
    if n & 1:
        total = -total
    return complex(total)


def det_lu(cnp.complex128_t[:, ::1] a):
    """Determinant by LU elimination with partial pivoting; input is copied."""
    cdef Py_ssize_t n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    work = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef cnp.complex128_t[:, ::1] m = work
    cdef Py_ssize_t i, j, k, p
    cdef double best, mag
    cdef double complex f, tmp, det = 1
    cdef int sign = 1
    for k in range(n):
        p = k
        best = abs(m[k, k])
        for i in range(k + 1, n):
            mag = abs(m[i, k])
            if mag > best:
                best = mag
                p = i
        if best == 0.0:
            return 0.0 + 0.0j
        if p != k:
            for j in range(n):
                tmp = m[k, j]
                m[k, j] = m[p, j]
                m[p, j] = tmp
            sign = -sign
        for i in range(k + 1, n):
            f = m[i, k] / m[k, k]
            m[i, k] = 0
            for j in range(k + 1, n):
                m[i, j] = m[i, j] - f * m[k, j]
    for k in range(n):
        det = det * m[k, k]
    if sign < 0:
        det = -det
    return complex(det)
