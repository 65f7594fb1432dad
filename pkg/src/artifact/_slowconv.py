"""NumPy fallback for the direct windowed convolution.

Evaluates the same set of products as the compiled loop, accumulated per tap
instead of per output, so the two engines agree to roundoff but not
necessarily bit for bit.
"""

import numpy as np

ENGINE = "numpy"


def windowed_dot(taps, x, start, count, stride):
    """out[i] = sum_u taps[u] * x[start + i - stride*u], i = 0 .. count-1."""
    taps = np.asarray(taps, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    out = np.zeros(count, dtype=np.complex128)
    for u in range(taps.size):
        lo = start - stride * u
        out += taps[u] * x[lo : lo + count]
    return out
