"""Convolution engine selection.

Prefers the compiled extension when the install built one and falls back to
the NumPy implementation otherwise.  Setting ARTIFACT_NO_EXT=1 forces the
fallback, which the benchmark uses to time both paths in one process tree.
The wrapper owns all index validation so the compiled loop can run unchecked.
"""

import os

from .errors import ParameterError

if os.environ.get("ARTIFACT_NO_EXT") == "1":
    from . import _slowconv as _impl
else:
    try:
        from . import _fastconv as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _slowconv as _impl

ENGINE = _impl.ENGINE


def windowed_dot(taps, x, start, count, stride):
    """Direct evaluation of out[i] = sum_u taps[u] * x[start + i - stride*u].

    stride +1 consumes present-and-past samples (causal direction), stride -1
    present-and-future samples (anticausal direction).
    """
    m = len(taps)
    if stride not in (-1, 1):
        raise ParameterError(f"stride must be +1 or -1, got {stride}")
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    if m < 1:
        raise ParameterError("taps must be non-empty")
    if stride == 1:
        lo, hi = start - (m - 1), start + count - 1
    else:
        lo, hi = start, start + count - 1 + (m - 1)
    if lo < 0 or hi >= len(x):
        raise ParameterError(
            f"convolution window touches indices [{lo}, {hi}] outside the signal [0, {len(x) - 1}]"
        )
    return _impl.windowed_dot(taps, x, start, count, stride)
