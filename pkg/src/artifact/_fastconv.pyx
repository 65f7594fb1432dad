# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled direct windowed convolution.

Per-output accumulation in a tight C loop.  Index bounds are validated by the
caller (the engine wrapper) before this unchecked loop runs.
"""

import numpy as np

ENGINE = "compiled"


def windowed_dot(taps, x, Py_ssize_t start, Py_ssize_t count, int stride):
    """out[i] = sum_u taps[u] * x[start + i - stride*u], i = 0 .. count-1."""
    cdef const double complex[::1] tv = np.ascontiguousarray(taps, dtype=np.complex128)
    cdef const double complex[::1] xv = np.ascontiguousarray(x, dtype=np.complex128)
    cdef Py_ssize_t m = tv.shape[0]
    out = np.empty(count, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, u, idx
    cdef double complex acc
    for i in range(count):
        acc = 0
        idx = start + i
        for u in range(m):
            acc = acc + tv[u] * xv[idx]
            idx = idx - stride
        ov[i] = acc
    return out
