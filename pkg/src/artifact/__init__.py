"""Causal predicting kernels for band-limited discrete-time sequences.

The package builds explicit one-sided prediction filters on the unit
circle.  A first-order anticausal target kernel is multiplied by a damping
factor that is small on the occupied band and controlled off it; inverting
the product on a uniform frequency grid and truncating to nonnegative lags
yields causal taps whose output tracks the anticausal target on band-limited
inputs.  Submodules:

    spectral   grid DFT conventions, signals, norms
    kernels    transfer functions, damping factor, causal taps
    signals    random band-limited / noisy test inputs, ideal splits
    predictor  windowed prediction runs and error reports
    analysis   error budgets and experiment sweeps
    cli        command-line interface

`ENGINE` names the active convolution backend: "compiled" when the
C extension is importable, "numpy" otherwise (or when ARTIFACT_NO_EXT=1).
"""

from ._engine import ENGINE, windowed_dot
from .errors import (
    CausalityLeakError,
    DegenerateBandError,
    GridSizeError,
    InsufficientDataError,
    InternalConsistencyError,
    ParameterError,
    PredictionError,
    SaturationError,
    WindowMismatchError,
)
from .spectral import (
    Signal,
    SpectrumGrid,
    dtft_on_grid,
    grid_omegas,
    inverse_grid,
    lq_grid_norm,
    norm,
)
from .kernels import (
    CAUSALITY_TOL,
    EXP_GUARD,
    FirstOrderKernel,
    PredictorParams,
    alpha,
    anticausal_kernel,
    causal_kernel,
    causality_leak_ratio,
    k_transfer,
    predictor_transfer,
    psi,
    tap_l1_tail,
    v_transfer,
)
from .signals import (
    BandSignalSpec,
    NoisySpectrumSpec,
    band_spectrum,
    gen_band_signal,
    gen_noisy_spectrum,
    ideal_filter_split,
    low_band_mask,
    noisy_spectrum,
)
from .predictor import (
    DEFAULT_TAIL_TOL,
    ErrorReport,
    PredictionRun,
    anticausal_tail_len,
    error_report,
    forecast,
    target,
)
from .analysis import (
    ErrorBudget,
    GammaSweepRow,
    NoiseSweepRow,
    SplitReport,
    budget,
    corollary_split_experiment,
    gamma_sweep,
    khat_sup_norm,
    noise_sweep,
    nu_i3_closed_form,
)

__version__ = "0.1.0"

__all__ = [
    "ENGINE",
    "windowed_dot",
    "PredictionError",
    "ParameterError",
    "GridSizeError",
    "DegenerateBandError",
    "WindowMismatchError",
    "InsufficientDataError",
    "CausalityLeakError",
    "SaturationError",
    "InternalConsistencyError",
    "Signal",
    "SpectrumGrid",
    "grid_omegas",
    "dtft_on_grid",
    "inverse_grid",
    "norm",
    "lq_grid_norm",
    "CAUSALITY_TOL",
    "EXP_GUARD",
    "FirstOrderKernel",
    "PredictorParams",
    "alpha",
    "k_transfer",
    "anticausal_kernel",
    "v_transfer",
    "psi",
    "predictor_transfer",
    "causal_kernel",
    "causality_leak_ratio",
    "tap_l1_tail",
    "BandSignalSpec",
    "NoisySpectrumSpec",
    "band_spectrum",
    "gen_band_signal",
    "noisy_spectrum",
    "gen_noisy_spectrum",
    "ideal_filter_split",
    "low_band_mask",
    "DEFAULT_TAIL_TOL",
    "PredictionRun",
    "ErrorReport",
    "anticausal_tail_len",
    "target",
    "forecast",
    "error_report",
    "ErrorBudget",
    "GammaSweepRow",
    "NoiseSweepRow",
    "SplitReport",
    "budget",
    "gamma_sweep",
    "noise_sweep",
    "corollary_split_experiment",
    "khat_sup_norm",
    "nu_i3_closed_form",
    "__version__",
]
