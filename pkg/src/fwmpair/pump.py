"""Classical pump envelopes in normalized units where |E|^2 is power in watts.

The Gaussian duration parameter ``tau`` follows the amplitude convention
E(t) = sqrt(P0) exp(-t^2 / (2 tau^2)), i.e. tau is the 1/e half-width of the
intensity.  All walk-off figures of merit elsewhere in the package (for
example beta1 * L / tau) use this tau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, CoverageError, ResolutionError
from .grid import TemporalGrid, dual_grid, transform_1d

C_LIGHT = 299792458.0  # m/s

# Wrap-around guard: envelope intensity at the window edges must stay below
# this fraction of the peak.  Keeps aliasing error below the purity
# tolerances used downstream.
COVERAGE_RATIO = 1e-6


@dataclass(frozen=True, eq=False)
class PumpEnvelope:
    """Complex pump field samples over a temporal grid, in sqrt(W).

    Construction validates the coverage invariant, so any envelope that
    exists is safe to transform without wrap-around artefacts.
    """

    grid: TemporalGrid
    samples: np.ndarray
    peak_power: float

    def __post_init__(self) -> None:
        if self.samples.shape != (self.grid.n_points,):
            raise ResolutionError(
                f"sample count {self.samples.shape} does not match grid "
                f"n_points {self.grid.n_points}"
            )
        if not np.all(np.isfinite(self.samples)):
            raise CoverageError("pump envelope contains non-finite samples")
        if self.energy() <= 0.0:
            raise CoverageError("pump envelope has zero energy")
        inten = np.abs(self.samples) ** 2
        edge = max(inten[0], inten[-1])
        if edge >= COVERAGE_RATIO * self.peak_power:
            raise CoverageError(
                f"envelope intensity at window edge is {edge:.3e} W, above "
                f"{COVERAGE_RATIO:.0e} of the {self.peak_power:.3e} W peak; "
                "enlarge the grid span"
            )

    @classmethod
    def from_samples(cls, grid: TemporalGrid, samples: np.ndarray) -> "PumpEnvelope":
        samples = np.asarray(samples, dtype=complex)
        peak = float(np.max(np.abs(samples) ** 2))
        return cls(grid, samples, peak)

    def intensity(self) -> np.ndarray:
        """|E(t)|^2 in watts on the grid."""
        return np.abs(self.samples) ** 2

    def energy(self) -> float:
        """Pulse energy in joules (trapezoidal integral of |E|^2)."""
        return float(np.trapezoid(np.abs(self.samples) ** 2, dx=self.grid.dt))

    def field_at(self, t: np.ndarray) -> np.ndarray:
        """Complex field linearly interpolated at arbitrary times, 0 outside."""
        times = self.grid.times()
        t = np.asarray(t, dtype=float)
        re = np.interp(t, times, self.samples.real, left=0.0, right=0.0)
        im = np.interp(t, times, self.samples.imag, left=0.0, right=0.0)
        return re + 1j * im

    def power_at(self, t: np.ndarray) -> np.ndarray:
        """|E|^2 linearly interpolated at arbitrary times, 0 outside."""
        times = self.grid.times()
        return np.interp(np.asarray(t, dtype=float), times, self.intensity(),
                         left=0.0, right=0.0)

    def duration_scale(self) -> float:
        """Intensity RMS width scaled so a Gaussian returns its tau."""
        t = self.grid.times()
        inten = self.intensity()
        total = np.sum(inten)
        mean = np.sum(t * inten) / total
        var = np.sum((t - mean) ** 2 * inten) / total
        return float(np.sqrt(2.0 * var))

    def scaled_to_peak(self, peak_power: float) -> "PumpEnvelope":
        """Same shape and phase, rescaled to a new peak power in watts."""
        if peak_power < 0.0:
            raise ConfigError(f"peak power must be non-negative, got {peak_power}")
        factor = np.sqrt(peak_power / self.peak_power)
        return PumpEnvelope(self.grid, self.samples * factor, peak_power)


def gaussian_pump(grid: TemporalGrid, tau: float, peak_power: float) -> PumpEnvelope:
    """Transform-limited Gaussian, E = sqrt(P0) exp(-(t - t_center)^2 / 2 tau^2)."""
    if peak_power < 0.0:
        raise ConfigError(f"peak power must be non-negative, got {peak_power}")
    if tau < 4.0 * grid.dt:
        raise ResolutionError(
            f"tau = {tau:.3e} s is under-resolved on dt = {grid.dt:.3e} s "
            "(need tau >= 4 dt)"
        )
    t = grid.times() - grid.t_center
    samples = np.sqrt(peak_power) * np.exp(-(t ** 2) / (2.0 * tau ** 2))
    return PumpEnvelope(grid, samples.astype(complex), float(peak_power))


def square_pump(
    grid: TemporalGrid,
    duration: float,
    peak_power: float,
    edge_smoothing: float = 0.0,
) -> PumpEnvelope:
    """Flat-top envelope of the given duration, hard-edged by default.

    ``edge_smoothing`` > 0 replaces each hard edge with a raised-cosine
    amplitude ramp of that width, contained inside the nominal duration.
    """
    if peak_power < 0.0:
        raise ConfigError(f"peak power must be non-negative, got {peak_power}")
    if duration < 8.0 * grid.dt:
        raise ResolutionError(
            f"duration = {duration:.3e} s is under-resolved on dt = {grid.dt:.3e} s"
        )
    if edge_smoothing < 0.0:
        raise ConfigError("edge_smoothing must be >= 0")
    if edge_smoothing > duration / 2.0:
        raise ConfigError("edge_smoothing cannot exceed half the duration")
    if duration >= grid.span:
        raise CoverageError(
            f"duration {duration:.3e} s does not fit in the grid span {grid.span:.3e} s"
        )
    x = np.abs(grid.times() - grid.t_center)
    half = duration / 2.0
    amp = np.zeros(grid.n_points)
    amp[x < half] = 1.0
    if edge_smoothing > 0.0:
        ramp = (x >= half - edge_smoothing) & (x < half)
        amp[ramp] = 0.5 * (1.0 + np.cos(np.pi * (x[ramp] - half + edge_smoothing) / edge_smoothing))
    samples = np.sqrt(peak_power) * amp
    return PumpEnvelope(grid, samples.astype(complex), float(peak_power))


def bandwidth_to_tau(delta_lambda_fwhm: float, lambda0: float) -> float:
    """Gaussian tau whose transform-limited intensity FWHM bandwidth is
    ``delta_lambda_fwhm`` (metres) at centre wavelength ``lambda0`` (metres).

    Chain: dnu = c dlambda / lambda0^2, dt_FWHM = 2 ln2 / (pi dnu),
    tau = dt_FWHM / (2 sqrt(ln2)).
    """
    if delta_lambda_fwhm <= 0.0 or lambda0 <= 0.0:
        raise ConfigError("bandwidth and wavelength must both be positive")
    delta_nu = C_LIGHT * delta_lambda_fwhm / lambda0 ** 2
    dt_fwhm = 2.0 * np.log(2.0) / (np.pi * delta_nu)
    return dt_fwhm / (2.0 * np.sqrt(np.log(2.0)))


def prechirp(pump: PumpEnvelope, beta2: float, length: float) -> PumpEnvelope:
    """Apply the linear-dispersion propagator exp(i (beta2/2) dw^2 length).

    A negative length pre-compensates dispersion; chirping with length
    -L/2 makes the pulse assume its original shape at the fiber midpoint.
    Spectral phase only, so pulse energy is preserved.
    """
    dw = dual_grid(pump.grid).detunings()
    spectrum = transform_1d(pump.samples, "time_to_freq", pump.grid)
    spectrum = spectrum * np.exp(1j * 0.5 * beta2 * dw ** 2 * length)
    samples = transform_1d(spectrum, "freq_to_time", pump.grid)
    return PumpEnvelope.from_samples(pump.grid, samples)
