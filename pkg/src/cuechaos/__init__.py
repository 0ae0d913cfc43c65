"""cuechaos: a numerical laboratory for circular-ensemble characteristic
polynomials, Gaussian multiplicative chaos on the unit circle, and Toeplitz
determinants with Fisher-Hartwig singularities.

The package has three layers:

* exact machinery -- special functions (`log_barnes_g`, `fh_constant`),
  finite-size moment formulas (`exact_mean_f`), Toeplitz determinants
  (`toeplitz_logdet`) and their closed-form asymptotics (`fh_prediction`);
* sampling machinery -- circular-ensemble eigenangles (`sample_cue`),
  powers-of-traces statistics, chaos measures built from Gaussian Fourier
  fields (`chaos_measure`), all driven by counter-based reproducible
  streams (`RngStream`, `run_mc`);
* verification harness -- the experiment registry (`run_experiment`)
  that pits estimates against oracles and emits deterministic reports.
"""

__version__ = "0.1.0"

from .asymptotics import (
    DomainError,
    FHPrediction,
    fh_prediction,
    merging_prediction,
    szego_prediction,
    variance_integral,
    variance_kernel,
)
from .cue import (
    EigenSample,
    ExponentPair,
    SingularityError,
    TraceVector,
    charpoly_log,
    exact_mean_f,
    f_truncated,
    f_value,
    integrate_f,
    sample_cue,
    trace_powers,
)
from .gmc import (
    GaussianDraw,
    GridMeasure,
    chaos_measure,
    field_coeffs_from_traces,
    field_partial_sum,
    field_variance,
    gaussian_draw,
    integrate_measure,
    sobolev_norm,
)
from .grids import TWO_PI, grid_step, uniform_grid
from .montecarlo import (
    MCEstimate,
    MCFailureError,
    MCRunStats,
    RetryableSampleError,
    RngStream,
    ks_distance,
    run_mc,
    run_mc_detailed,
)
from .special import PoleError, fh_constant, log_barnes_g, log_gamma
from .toeplitz import (
    FourierCoeffs,
    Singularity,
    SymbolSpec,
    ToeplitzResult,
    fourier_coeffs,
    heine_szego_check,
    make_sigma,
    symbol_eval,
    toeplitz_logdet,
)

from .experiments import (  # noqa: E402  (needs __version__ above)
    EXPERIMENTS,
    ConfigError,
    ExperimentConfig,
    build_identifier,
    run_experiment,
    write_report,
)

__all__ = [
    "__version__",
    # special
    "PoleError",
    "log_gamma",
    "log_barnes_g",
    "fh_constant",
    # grids
    "TWO_PI",
    "uniform_grid",
    "grid_step",
    # montecarlo
    "RngStream",
    "MCEstimate",
    "MCRunStats",
    "RetryableSampleError",
    "MCFailureError",
    "run_mc",
    "run_mc_detailed",
    "ks_distance",
    # cue
    "EigenSample",
    "ExponentPair",
    "TraceVector",
    "SingularityError",
    "sample_cue",
    "charpoly_log",
    "trace_powers",
    "f_value",
    "f_truncated",
    "exact_mean_f",
    "integrate_f",
    # gmc
    "GaussianDraw",
    "GridMeasure",
    "gaussian_draw",
    "field_variance",
    "field_partial_sum",
    "chaos_measure",
    "integrate_measure",
    "field_coeffs_from_traces",
    "sobolev_norm",
    # toeplitz
    "Singularity",
    "SymbolSpec",
    "ToeplitzResult",
    "FourierCoeffs",
    "symbol_eval",
    "make_sigma",
    "fourier_coeffs",
    "toeplitz_logdet",
    "heine_szego_check",
    # asymptotics
    "DomainError",
    "FHPrediction",
    "szego_prediction",
    "fh_prediction",
    "merging_prediction",
    "variance_kernel",
    "variance_integral",
    # experiments
    "ExperimentConfig",
    "ConfigError",
    "EXPERIMENTS",
    "run_experiment",
    "write_report",
    "build_identifier",
]
