"""Compare the compiled windowed-dot engine against the numpy fallback.

Runs the same sliding-window accumulations through both implementations and
prints a timing table.  The compiled module is optional; when it is missing
only the fallback column is filled in.

Usage: python3 benchmarks/bench_convolve.py [--repeats N]
"""

import argparse
import time

import numpy as np

from artifact import _slowconv

try:
    from artifact import _fastconv
except ImportError:
    _fastconv = None

# (label, taps m, signal length, outputs, stride)
CASES = [
    ("short causal", 64, 2048, 1024, 1),
    ("short anticausal", 64, 2048, 1024, -1),
    ("medium causal", 512, 8192, 4096, 1),
    ("long causal", 4096, 16384, 8192, 1),
    ("long anticausal", 4096, 16384, 8192, -1),
]


def run_case(mod, taps, x, start, count, stride, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = mod.windowed_dot(taps, x, start, count, stride)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    print(f"{'case':<18} {'m':>5} {'outputs':>8} {'numpy':>12} {'compiled':>12} {'speedup':>8}")
    for label, m, length, count, stride in CASES:
        taps = rng.standard_normal(m)
        x = rng.standard_normal(length)
        if stride == 1:
            start = m - 1
        else:
            start = 0
        slow_t, slow_out = run_case(_slowconv, taps, x, start, count, stride, args.repeats)
        if _fastconv is None:
            print(f"{label:<18} {m:>5} {count:>8} {slow_t * 1e3:>10.3f}ms {'n/a':>12} {'':>8}")
            continue
        fast_t, fast_out = run_case(_fastconv, taps, x, start, count, stride, args.repeats)
        gap = float(np.max(np.abs(slow_out - fast_out)))
        scale = float(np.max(np.abs(slow_out))) or 1.0
        if gap > 1e-12 * scale:
            raise SystemExit(f"{label}: engines disagree by {gap:.3e}")
        print(f"{label:<18} {m:>5} {count:>8} {slow_t * 1e3:>10.3f}ms "
              f"{fast_t * 1e3:>10.3f}ms {slow_t / fast_t:>7.2f}x")
    if _fastconv is None:
        print("\ncompiled extension not built; showing fallback only")


if __name__ == "__main__":
    main()
