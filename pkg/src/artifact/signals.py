"""Test-process generation and band splitting.

Band-limited and high-frequency draws place independent complex Gaussian
values on the allowed grid bins and exact zeros elsewhere; the noisy-spectrum
model bounds bin magnitudes by 1 inside the band and by nu outside.  All
constructions are conjugate-symmetric so the synthesized time signals are
real, and all are deterministic functions of (spec, grid size).

PRNG discipline: one numpy default_rng(seed) per spec, consumed in a fixed
vectorized order (full-grid arrays, never loops), so the same spec always
reproduces the same draws regardless of platform word size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBandError, GridSizeError, ParameterError
from .spectral import Signal, SpectrumGrid, dtft_on_grid, grid_omegas, inverse_grid, norm

NORMALIZATIONS = ("unit_l2", "unit_spectrum_linf")


@dataclass(frozen=True)
class BandSignalSpec:
    """Recipe for one in-class test signal."""

    omega: float
    mode: str
    length: int
    seed: int
    normalization: str = "unit_l2"

    def __post_init__(self):
        omega = float(self.omega)
        if not (0.0 < omega < math.pi):
            raise ParameterError(f"band edge must lie in (0, pi), got {omega}")
        object.__setattr__(self, "omega", omega)
        if self.mode not in ("low", "high"):
            raise ParameterError(f"mode must be 'low' or 'high', got {self.mode!r}")
        if int(self.length) < 1:
            raise ParameterError(f"length must be >= 1, got {self.length}")
        object.__setattr__(self, "length", int(self.length))
        object.__setattr__(self, "seed", int(self.seed))
        if self.normalization not in NORMALIZATIONS:
            raise ParameterError(f"normalization must be one of {NORMALIZATIONS}")


@dataclass(frozen=True)
class NoisySpectrumSpec:
    """Recipe for a bounded-magnitude spectrum with out-of-band level nu."""

    omega: float
    nu: float
    seed: int
    length: int

    def __post_init__(self):
        omega = float(self.omega)
        if not (0.0 < omega < math.pi):
            raise ParameterError(f"band edge must lie in (0, pi), got {omega}")
        object.__setattr__(self, "omega", omega)
        nu = float(self.nu)
        if not (0.0 <= nu < 1.0):
            raise ParameterError(f"out-of-band level must lie in [0, 1), got {nu}")
        object.__setattr__(self, "nu", nu)
        if int(self.length) < 1:
            raise ParameterError(f"length must be >= 1, got {self.length}")
        object.__setattr__(self, "length", int(self.length))
        object.__setattr__(self, "seed", int(self.seed))


def _hermitize(vals: np.ndarray) -> np.ndarray:
    # pair bin j with (n - j) % n, i.e. omega with -omega; the self-paired
    # bins (omega = -pi and omega = 0) come out exactly real
    n = vals.size
    mirrored = np.conj(vals[(n - np.arange(n)) % n])
    return 0.5 * (vals + mirrored)


def low_band_mask(n: int, omega: float) -> np.ndarray:
    """Indicator of the closed low band |omega_j| <= omega.

    Bins exactly at +-omega (they do occur: omega = pi/2 lands on the grid for
    every power-of-two n) belong to the low band.
    """
    return np.abs(grid_omegas(n)) <= omega


def _band_spectrum_draw(spec: BandSignalSpec, n: int) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    draw = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    sym = _hermitize(draw)
    om = grid_omegas(n)
    keep = np.abs(om) <= spec.omega if spec.mode == "low" else np.abs(om) >= spec.omega
    if not np.any(keep & (np.abs(om) > 1e-15)):
        raise DegenerateBandError(
            f"the {spec.mode} band at omega={spec.omega} holds no oscillatory bin on an n={n} grid"
        )
    sym[~keep] = 0.0
    return sym


def _build_band(spec: BandSignalSpec, n: int):
    if spec.length > n:
        raise GridSizeError(f"signal length {spec.length} exceeds grid size {n}")
    raw = _band_spectrum_draw(spec, n)
    window = inverse_grid(SpectrumGrid(n, raw), 0, spec.length)
    if spec.normalization == "unit_l2":
        scale = norm(window, "l2")
    else:
        scale = float(np.max(np.abs(raw)))
    if scale == 0.0:
        scale = 1.0
    # the construction is conjugate-symmetric, so the window is real up to
    # roundoff; drop the dust
    sig = Signal(0, np.real(window.values) / scale)
    return SpectrumGrid(n, raw / scale), sig


def band_spectrum(spec: BandSignalSpec, n: int) -> SpectrumGrid:
    """The constructed spectrum: exact zeros outside the allowed band."""
    return _build_band(spec, n)[0]


def gen_band_signal(spec: BandSignalSpec, n: int) -> Signal:
    """Real time-domain window [0, length) synthesized from band_spectrum."""
    return _build_band(spec, n)[1]


def _noisy_spectrum_draw(spec: NoisySpectrumSpec, n: int) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    mags = rng.uniform(0.0, 1.0, n)
    phases = rng.uniform(0.0, 2.0 * np.pi, n)
    env = np.where(low_band_mask(n, spec.omega), 1.0, spec.nu)
    # the envelope depends on |omega| only, so symmetrizing cannot raise any
    # magnitude above it
    return _hermitize(env * mags * np.exp(1j * phases))


def noisy_spectrum(spec: NoisySpectrumSpec, n: int) -> SpectrumGrid:
    """Spectrum with |X| <= 1 on the closed band and |X| <= nu outside."""
    return SpectrumGrid(n, _noisy_spectrum_draw(spec, n))


def gen_noisy_spectrum(spec: NoisySpectrumSpec, n: int) -> Signal:
    """Real time-domain window [0, length) synthesized from noisy_spectrum."""
    if spec.length > n:
        raise GridSizeError(f"signal length {spec.length} exceeds grid size {n}")
    window = inverse_grid(noisy_spectrum(spec, n), 0, spec.length)
    return Signal(0, np.real(window.values))


def ideal_filter_split(x: Signal, omega: float, n: int):
    """Split x into (low, high) parts by the closed low-band indicator.

    Bin-wise multiplication by the indicator and its complement, then inverse
    transform over x's own window.  The two indicators add to one bin-exactly,
    so low + high reproduces x to roundoff.  Ties at |omega_j| = omega go to
    the low part.
    """
    omega = float(omega)
    if not (0.0 < omega < math.pi):
        raise ParameterError(f"band edge must lie in (0, pi), got {omega}")
    spectrum = dtft_on_grid(x, n)
    keep = low_band_mask(n, omega)
    low_vals = np.where(keep, spectrum.values, 0.0)
    high_vals = np.where(keep, 0.0, spectrum.values)
    low = inverse_grid(SpectrumGrid(n, low_vals), x.start_index, len(x))
    high = inverse_grid(SpectrumGrid(n, high_vals), x.start_index, len(x))
    return low, high
