"""Photon-pair joint amplitudes from pulsed four-wave mixing.

Analytic frequency- and time-domain pair amplitudes with self- and
cross-phase modulation, a split-step Fourier model including
group-velocity dispersion, Schmidt-mode purity analysis, herald filtering,
and a config-driven sweep runner.
"""

from .errors import (
    ConfigError,
    CoverageError,
    DegenerateStateError,
    DegenerateTransmissionError,
    DegenerateWalkoffError,
    DetuningRangeError,
    DimensionError,
    DomainError,
    DomainTagError,
    ResolutionError,
    SimulationError,
)
from .fiber import FiberParams, cross_polarized_params, matched_idler_wavelength
from .filtering import (
    FilterSpec,
    apply_filter,
    effective_rate,
    marginal_centroid,
    purity_vs_effective_rate,
)
from .grid import (
    Domain,
    JointAmplitude,
    SpectralGrid,
    TemporalGrid,
    dual_grid,
    dual_time_grid,
    transform_1d,
    transform_2d,
)
from .jsa import build_jsa_analytic, phase_mismatch, phasematch_G, pump_function_F
from .jta import (
    PumpIntensityAccumulator,
    build_jta,
    creation_coords,
    generation_rate,
    nonlinear_phase_theta,
    power_for_rate,
)
from .presets import FiberPreset, get_preset, list_presets, preset_names
from .pump import (
    PumpEnvelope,
    bandwidth_to_tau,
    gaussian_pump,
    prechirp,
    square_pump,
)
from .runconfig import ResolvedRun, RunConfig, auto_grid, auto_steps, load_config, resolve
from .schmidt import SchmidtResult, normalize, purity, purity_of, schmidt_decompose
from .ssf import (
    ConvergenceResult,
    PumpPropagation,
    SsfConfig,
    convergence_study,
    fwm_inject_step,
    pair_dispersion_half_step,
    pair_xpm_step,
    propagate_pump,
    simulate_pair_state,
)
from .sweeps import (
    TauOptimum,
    export_matrix,
    export_run,
    golden_section_maximize,
    make_pump,
    optimize_tau,
    purity_vs_rate,
    ssf_power_for_rate,
    state_at_power,
    state_at_rate,
    visibility_bound,
)

__version__ = "0.1.0"
