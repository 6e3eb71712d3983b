"""Analytic time-domain joint temporal amplitude with nonlinear phase.

Neglecting group-velocity dispersion, a pair detected at (t_s, t_i) must
have been created at a unique position z_c and time t_c fixed by the
differential walk-off between signal and idler.  The amplitude is then

    JTA(t_s, t_i) = i sqrt(gamma_s gamma_i) / |beta1_s - beta1_i|
                    * e^{i Theta} * E_p(t_c)^2        for 0 < z_c < L,
    0 otherwise,

where Theta collects the pump self-phase modulation accumulated up to the
creation point and the cross-phase modulation each photon picks up while
walking from the creation point to the fiber end.  The support gate is
exact (hard edges); the sinc-like ringing this produces after transforming
to the frequency domain is physical.

|JTA| is independent of all phase terms, so purities computed with the
nonlinear phase disabled equal purities of the magnitude-only amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoverageError,
    DegenerateWalkoffError,
    DomainError,
    DomainTagError,
)
from .fiber import FiberParams
from .grid import Domain, JointAmplitude, TemporalGrid
from .pump import COVERAGE_RATIO, PumpEnvelope

# Relative threshold below which a walk-off term switches to its
# group-velocity-matched limit (avoids 0/0 in the Theta integrals).
WALKOFF_EPS_FACTOR = 1e-3


@dataclass(frozen=True, eq=False)
class PumpIntensityAccumulator:
    """Running trapezoidal integral of |E_p(t')|^2 dt' from the grid start.

    ``cumulative`` is monotone non-decreasing, starts at 0, and ends at the
    pulse energy; queries clamp outside the grid (0 before, total after).
    """

    grid: TemporalGrid
    cumulative: np.ndarray

    @classmethod
    def from_pump(cls, pump: PumpEnvelope) -> "PumpIntensityAccumulator":
        inten = pump.intensity()
        segments = 0.5 * (inten[1:] + inten[:-1]) * pump.grid.dt
        cumulative = np.concatenate(([0.0], np.cumsum(segments)))
        return cls(pump.grid, cumulative)

    def integral_to(self, t: np.ndarray) -> np.ndarray:
        """Integral from the grid start up to time t, linearly interpolated."""
        return np.interp(np.asarray(t, dtype=float), self.grid.times(), self.cumulative)

    def integral_between(self, t_lo: np.ndarray, t_hi: np.ndarray) -> np.ndarray:
        return self.integral_to(t_hi) - self.integral_to(t_lo)


def walkoff_epsilon(p: FiberParams, duration_scale: float | None = None) -> float:
    """Threshold on |beta1| below which walk-off is treated as zero."""
    scales = [abs(p.beta1_s), abs(p.beta1_i)]
    if duration_scale is not None:
        scales.append(duration_scale / p.length)
    return WALKOFF_EPS_FACTOR * max(scales)


def creation_coords(
    t_s: np.ndarray, t_i: np.ndarray, p: FiberParams
) -> tuple[np.ndarray, np.ndarray]:
    """Creation position z_c and time t_c implied by differential walk-off.

        z_c = L - (t_s - t_i) / (beta1_s - beta1_i)
        t_c = (beta1_s t_i - beta1_i t_s) / (beta1_s - beta1_i)

    z_c may land outside [0, L]; callers interpret that as "no pair".
    Raises DegenerateWalkoffError when beta1_s and beta1_i coincide, where
    arrival times no longer identify a creation point.
    """
    dwalk = p.beta1_s - p.beta1_i
    if abs(dwalk) <= walkoff_epsilon(p):
        raise DegenerateWalkoffError(
            f"|beta1_s - beta1_i| = {abs(dwalk):.3e} s/m is too small to "
            "define creation coordinates"
        )
    t_s = np.asarray(t_s, dtype=float)
    t_i = np.asarray(t_i, dtype=float)
    z_c = p.length - (t_s - t_i) / dwalk
    t_c = (p.beta1_s * t_i - p.beta1_i * t_s) / dwalk
    return z_c, t_c


def _xpm_term(
    gamma: float,
    beta1: float,
    t_exit: np.ndarray,
    t_c: np.ndarray,
    z_c: np.ndarray,
    pump: PumpEnvelope,
    acc: PumpIntensityAccumulator,
    eps: float,
    length: float,
) -> np.ndarray:
    """Cross-phase modulation from z_c to the fiber end for one photon."""
    if gamma == 0.0:
        return np.zeros_like(np.asarray(t_exit, dtype=float))
    if abs(beta1) < eps:
        # group-velocity matched: no walk-off relative to the pump
        return 2.0 * gamma * (length - z_c) * pump.power_at(t_exit)
    return (2.0 * gamma / beta1) * acc.integral_between(t_c, t_exit)


def nonlinear_phase_theta(
    t_s: np.ndarray,
    t_i: np.ndarray,
    z_c: np.ndarray,
    t_c: np.ndarray,
    pump: PumpEnvelope,
    acc: PumpIntensityAccumulator,
    p: FiberParams,
) -> np.ndarray:
    """Nonlinear phase Theta at the given creation coordinates (radians).

    Three contributions: pump self-phase modulation 2 gamma_p z_c |E_p(t_c)|^2
    accumulated before the pair is created, plus one walk-off integral
    (2 gamma_m / beta1_m) int_{t_c}^{t_m} |E_p|^2 dt per photon for the
    cross-phase modulation after creation.  A photon whose |beta1| falls
    below the walk-off threshold instead uses the group-velocity-matched
    limit 2 gamma_m (L - z_c) |E_p(t_m)|^2.
    """
    z_c = np.asarray(z_c, dtype=float)
    if np.any(z_c < 0.0) or np.any(z_c > p.length):
        raise DomainError("z_c outside [0, L]; gate on the support condition first")
    eps = walkoff_epsilon(p, pump.duration_scale())
    theta = 2.0 * p.gamma_p * z_c * pump.power_at(t_c)
    theta = theta + _xpm_term(p.gamma_s, p.beta1_s, t_s, t_c, z_c, pump, acc, eps, p.length)
    theta = theta + _xpm_term(p.gamma_i, p.beta1_i, t_i, t_c, z_c, pump, acc, eps, p.length)
    return theta


def build_jta(
    pump: PumpEnvelope,
    p: FiberParams,
    s_grid: TemporalGrid,
    i_grid: TemporalGrid,
    nonlinear_phase: bool = True,
) -> JointAmplitude:
    """Fill the joint temporal amplitude on the given arrival-time grids.

    ``nonlinear_phase=False`` drops e^{i Theta} (the zero-rate limit),
    leaving |JTA| unchanged.  Raises CoverageError when the pump-weighted
    support reaches the grid boundary, since the subsequent transform would
    wrap it around.
    """
    ts = s_grid.times()[:, None]
    ti = i_grid.times()[None, :]
    z_c, t_c = creation_coords(ts, ti, p)
    mask = (z_c > 0.0) & (z_c < p.length)
    if not np.any(mask):
        raise CoverageError("JTA support does not intersect the grids")

    matrix = np.zeros((s_grid.n_points, i_grid.n_points), dtype=complex)
    tc_in = t_c[mask]
    field_c = pump.field_at(tc_in)
    dwalk = abs(p.beta1_s - p.beta1_i)
    amp = (1j * np.sqrt(p.gamma_s * p.gamma_i) / dwalk) * field_c ** 2

    if nonlinear_phase and (p.gamma_p > 0.0 or p.gamma_s > 0.0 or p.gamma_i > 0.0):
        acc = PumpIntensityAccumulator.from_pump(pump)
        ts_in = np.broadcast_to(ts, mask.shape)[mask]
        ti_in = np.broadcast_to(ti, mask.shape)[mask]
        theta = nonlinear_phase_theta(ts_in, ti_in, z_c[mask], tc_in, pump, acc, p)
        amp = amp * np.exp(1j * theta)

    matrix[mask] = amp

    peak = np.max(np.abs(matrix) ** 2)
    if peak > 0.0:
        edge = max(
            np.max(np.abs(matrix[0, :])),
            np.max(np.abs(matrix[-1, :])),
            np.max(np.abs(matrix[:, 0])),
            np.max(np.abs(matrix[:, -1])),
        )
        if edge ** 2 >= COVERAGE_RATIO * peak:
            raise CoverageError(
                "JTA support is truncated by the grid edge; enlarge the window"
            )
    return JointAmplitude(matrix, s_grid, i_grid, Domain.TIME)


def generation_rate(jta: JointAmplitude) -> float:
    """Pair probability per pump pulse, sum |JTA|^2 dt_s dt_i."""
    if jta.domain is not Domain.TIME:
        raise DomainTagError("generation rate integrates a time-domain amplitude")
    dt_s, dt_i = jta.spacings
    return float(jta.rate_scale ** 2 * np.sum(np.abs(jta.matrix) ** 2) * dt_s * dt_i)


def power_for_rate(
    pump_shape: PumpEnvelope,
    p: FiberParams,
    target_rate: float,
    s_grid: TemporalGrid | None = None,
    i_grid: TemporalGrid | None = None,
) -> float:
    """Peak power (watts) at which the pump shape yields the target rate.

    The rate scales exactly as the peak power squared (phases do not touch
    |JTA|), so one reference build inverts the relation exactly.  Grids
    default to the pump's own grid on both axes.
    """
    if target_rate < 0.0:
        raise DomainError(f"target rate must be >= 0, got {target_rate}")
    if target_rate == 0.0:
        return 0.0
    s_grid = s_grid if s_grid is not None else pump_shape.grid
    i_grid = i_grid if i_grid is not None else pump_shape.grid
    reference = build_jta(pump_shape, p, s_grid, i_grid, nonlinear_phase=False)
    r_ref = generation_rate(reference)
    if r_ref == 0.0:
        raise DegenerateWalkoffError("reference amplitude carries no pairs")
    return float(pump_shape.peak_power * np.sqrt(target_rate / r_ref))
