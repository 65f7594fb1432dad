"""Kernel construction.

The target of a prediction is the anticausal convolution by k, the impulse
response of 1/(z+a) (optionally (z+b)/(z+a), which factors as 1 + (b-a)/(z+a)
and is always handled through that factorization).  The causal predictor is
built in the frequency domain as

    Khat(z) = V(z) * K(z),
    V(z)    = 1 - exp(gamma * sign(a+alpha) * (z+a)/(z+alpha)),

where alpha = alpha(a, omega) places the only zero of the exponent's real
part exactly at the band edges +-omega.  For gamma -> -inf, V -> 1 uniformly
on compact subsets strictly inside the band (|omega'| < omega) while Khat
stays causal, which is what makes honest pathwise prediction of band-limited
sequences possible.  The mirrored statement holds for gamma -> +inf outside
the band.

A hard numerical boundary is worth stating up front: |V - 1| on the wrong
side of the band grows like exp(|gamma * psi|), so the time-domain taps of
Khat contain components of that size.  Once |gamma| * max|psi| exceeds about
36 log-units, those components are more than 1/eps_machine times larger than
the prediction target and double-precision convolution output is dominated
by roundoff.  Constructions beyond exp(700) are refused outright (see
EXP_GUARD); the regime between exp(36) and exp(700) is representable but
useless for scoring, which the experiment layer documents rather than hides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CausalityLeakError, GridSizeError, ParameterError, SaturationError
from .spectral import Signal, SpectrumGrid, grid_omegas, inverse_grid

# Relative l2 mass tolerated at negative time indices when inverting Khat on
# a finite grid; above this the grid is considered too small for the gamma.
CAUSALITY_TOL = 1e-8

# exp() of anything above this is refused: 700 is just under log(DBL_MAX).
EXP_GUARD = 700.0


def _check_pole(a: float) -> float:
    a = float(a)
    if not abs(a) > 1.0:
        raise ParameterError(f"pole parameter must satisfy |a| > 1, got a={a}")
    return a


def _check_band_edge(omega: float) -> float:
    omega = float(omega)
    if not (0.0 < omega < math.pi):
        raise ParameterError(f"band edge must lie strictly inside (0, pi), got {omega}")
    return omega


@dataclass(frozen=True)
class FirstOrderKernel:
    """Parameters of the kernel 1/(z+a), or (z+b)/(z+a) when b is given."""

    a: float
    b: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", _check_pole(self.a))
        if self.b is not None:
            object.__setattr__(self, "b", float(self.b))

    @property
    def c(self) -> float:
        """The residue b - a in the factorization (z+b)/(z+a) = 1 + c/(z+a)."""
        if self.b is None:
            raise ParameterError("c is defined only when the zero parameter b is present")
        return self.b - self.a


@dataclass(frozen=True)
class PredictorParams:
    """Predictor configuration: band edge, damping, grid, truncation, mode.

    Low mode (gamma <= 0) targets sequences with spectrum supported in
    |omega'| <= omega; high mode (gamma >= 0) targets the complement band.
    """

    omega: float
    gamma: float
    n: int
    m: int
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "omega", _check_band_edge(self.omega))
        object.__setattr__(self, "gamma", float(self.gamma))
        if self.mode not in ("low", "high"):
            raise ParameterError(f"mode must be 'low' or 'high', got {self.mode!r}")
        if self.mode == "low" and self.gamma > 0:
            raise ParameterError("low mode requires gamma <= 0")
        if self.mode == "high" and self.gamma < 0:
            raise ParameterError("high mode requires gamma >= 0")
        n = int(self.n)
        if n < 8 or (n & (n - 1)) != 0:
            raise GridSizeError(f"grid size must be a power of two >= 8, got {n}")
        object.__setattr__(self, "n", n)
        m = int(self.m)
        if not 1 <= m <= n:
            raise ParameterError(f"truncation length must satisfy 1 <= m <= n, got {m}")
        object.__setattr__(self, "m", m)


def alpha(a: float, omega: float) -> float:
    """Mirror pole location -(1 + a*cos(omega)) / (a + cos(omega)).

    Lies strictly inside (-1, 1) for any |a| > 1 and is the root of
    1 + alpha*a + (a + alpha)*cos(omega) = 0, which pins the zero of the
    damping exponent's real part to the band edge.
    """
    a = _check_pole(a)
    omega = _check_band_edge(omega)
    den = a + math.cos(omega)
    if abs(den) < 1e-12:
        raise ParameterError("degenerate denominator a + cos(omega)")
    val = -(1.0 + a * math.cos(omega)) / den
    if not (-1.0 < val < 1.0):
        raise ParameterError(
            f"mirror parameter {val} escaped (-1, 1); a={a} is too close to +-1 for omega={omega}"
        )
    return val


def k_transfer(kernel: FirstOrderKernel, n: int) -> SpectrumGrid:
    """Target transfer K on the grid; the two-parameter form uses 1 + c/(z+a)."""
    z = np.exp(1j * grid_omegas(n))
    base = 1.0 / (z + kernel.a)
    vals = base if kernel.b is None else 1.0 + kernel.c * base
    return SpectrumGrid(n, vals)


def anticausal_kernel(kernel: FirstOrderKernel, t_min: int) -> Signal:
    """Closed-form impulse response of 1/(z+a) on t_min <= t <= 0.

    k(t) = (-1)^t * a^(t-1) for t <= 0 and k(t) = 0 for t > 0; evaluated as
    (1/a) * (-1/a)^(-t) so magnitudes only ever shrink.  Validated against
    grid inversion of the transfer in the test suite.
    """
    if kernel.b is not None:
        raise ParameterError(
            "closed form applies to the plain-pole kernel; "
            "use the 1 + c/(z+a) factorization for the two-parameter form"
        )
    t_min = int(t_min)
    if t_min > 0:
        raise ParameterError(f"t_min must be <= 0, got {t_min}")
    u = np.arange(-t_min, -1, -1)  # u = -t, descending so times ascend
    vals = (1.0 / kernel.a) * (-1.0 / kernel.a) ** u
    return Signal(t_min, vals)


def v_transfer(a: float, alpha_: float, gamma: float, n: int) -> SpectrumGrid:
    """Damping factor V = 1 - exp(gamma * sign(a+alpha) * (z+a)/(z+alpha)) bin-wise."""
    a = float(a)
    if not abs(alpha_) < 1.0:
        raise ParameterError(f"|alpha| must be < 1, got {alpha_}")
    om = grid_omegas(n)
    z = np.exp(1j * om)
    s = 1.0 if a + alpha_ > 0 else -1.0
    expo = gamma * s * (z + a) / (z + alpha_)
    worst = int(np.argmax(expo.real))
    if expo.real[worst] > EXP_GUARD:
        raise SaturationError(
            f"damping exponent real part {expo.real[worst]:.1f} exceeds {EXP_GUARD:.0f} "
            f"at omega={om[worst]:.6f} (bin {worst}); "
            f"kernel magnitudes would overflow double precision"
        )
    return SpectrumGrid(n, 1.0 - np.exp(expo))


def psi(a: float, alpha_: float, omega):
    """Signed real part of the damping exponent direction, per unit gamma.

    psi(w) = sign(a+alpha) * (1 + a*alpha + (a+alpha)*cos w) / |e^{iw}+alpha|^2.

    Strictly positive inside the band whose edge defined alpha, zero at the
    edge, strictly negative outside.  Accepts a scalar or an array of angles.
    """
    a = float(a)
    if not abs(alpha_) < 1.0:
        raise ParameterError(f"|alpha| must be < 1, got {alpha_}")
    w = np.asarray(omega, dtype=float)
    s = 1.0 if a + alpha_ > 0 else -1.0
    c = np.cos(w)
    num = 1.0 + a * alpha_ + (a + alpha_) * c
    den = 1.0 + alpha_ * alpha_ + 2.0 * alpha_ * c
    out = s * num / den
    return float(out) if w.ndim == 0 else out


def predictor_transfer(kernel: FirstOrderKernel, params: PredictorParams) -> SpectrumGrid:
    """Causal predictor transfer Khat = V * K on the grid.

    For the two-parameter kernel this is V * (1 + c/(z+a)): one damping factor
    for the whole kernel.
    """
    al = alpha(kernel.a, params.omega)
    v = v_transfer(kernel.a, al, params.gamma, params.n)
    k = k_transfer(kernel, params.n)
    return SpectrumGrid(params.n, v.values * k.values)


def _invert_predictor(kernel: FirstOrderKernel, params: PredictorParams):
    """Grid inversion of Khat over t in [-n/2, n/2) plus the causality leak ratio."""
    khat = predictor_transfer(kernel, params)
    n = params.n
    full = inverse_grid(khat, -(n // 2), n)
    total = float(np.linalg.norm(full.values))
    if total == 0.0:  # gamma = 0 gives the zero kernel
        return full, 0.0
    leak = float(np.linalg.norm(full.values[: n // 2])) / total
    return full, leak


def causality_leak_ratio(kernel: FirstOrderKernel, params: PredictorParams) -> float:
    """Relative l2 mass the grid inversion of Khat leaks onto t < 0."""
    return _invert_predictor(kernel, params)[1]


def causal_kernel(kernel: FirstOrderKernel, params: PredictorParams) -> Signal:
    """Time-domain predictor taps khat(0) .. khat(M-1).

    The exact transfer is causal; a finite grid aliases a small amount of
    mass onto negative indices.  That mass is measured relative to the whole
    kernel and must stay below CAUSALITY_TOL, otherwise the grid is too small
    for the requested gamma and the construction is refused.  For real pole
    parameters the inverse transform is real up to roundoff; the imaginary
    parts are dropped on output.
    """
    if params.m > params.n // 2:
        raise GridSizeError(
            f"truncation length {params.m} exceeds the causal half of the grid ({params.n // 2})"
        )
    full, leak = _invert_predictor(kernel, params)
    if leak > CAUSALITY_TOL:
        raise CausalityLeakError(
            f"negative-index leak ratio {leak:.3e} exceeds {CAUSALITY_TOL:.0e}; "
            f"grid n={params.n} is too small for gamma={params.gamma}"
        )
    half = params.n // 2
    taps = full.values[half : half + params.m]
    return Signal(0, taps.real.astype(np.complex128))


def tap_l1_tail(kernel: FirstOrderKernel, params: PredictorParams) -> float:
    """l1 mass of the causal taps discarded beyond M, for truncation reporting."""
    full, _ = _invert_predictor(kernel, params)
    half = params.n // 2
    return float(np.sum(np.abs(full.values[half + params.m :])))
