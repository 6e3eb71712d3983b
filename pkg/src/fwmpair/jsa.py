"""Analytic frequency-domain joint spectral amplitude.

The JSA factors into an energy-matching function F, the self-convolution of
the pump spectral amplitude evaluated at the sum detuning, and a
phase-matching function G = e^{i db L/2} sinc(db L/2) from the uniform
fiber of length L.  The phase mismatch db is expanded around the
phase-matched carriers: linear in the detunings through the relative
inverse group velocities, optionally quadratic through the beta2 terms, and
optionally shifted by the continuous-wave nonlinear correction -2 gamma_p P.
"""

from __future__ import annotations

import numpy as np

from .errors import DetuningRangeError
from .fiber import FiberParams
from .grid import Domain, JointAmplitude, SpectralGrid, dual_grid, transform_1d
from .pump import PumpEnvelope


def pump_function_F(
    pump_spectrum: np.ndarray,
    spectral_grid: SpectralGrid,
    sum_detuning: np.ndarray,
) -> np.ndarray:
    """Self-convolution of the pump spectral amplitude at the sum detuning.

    Energy conservation fixes the two pump frequencies to sum to the
    signal/idler total, so F depends on dw_s + dw_i only.  For a Gaussian
    spectral amplitude of standard deviation sigma_E the result is Gaussian
    with variance 2 sigma_E^2 (up to an overall constant).

    Raises DetuningRangeError when a requested sum lies outside the range
    covered by the discrete convolution.
    """
    spec = np.asarray(pump_spectrum, dtype=complex)
    if spec.shape != (spectral_grid.n_points,):
        raise DetuningRangeError(
            f"spectrum length {spec.shape} does not match grid n_points "
            f"{spectral_grid.n_points}"
        )
    n = spectral_grid.n_points
    dw = spectral_grid.d_omega
    conv = np.convolve(spec, spec, mode="full") * dw
    # full convolution index m corresponds to sum detuning (m - 2*(n//2)) dw
    sums = (np.arange(2 * n - 1) - 2 * (n // 2)) * dw + 2.0 * spectral_grid.omega_center
    target = np.asarray(sum_detuning, dtype=float)
    if np.any(target < sums[0]) or np.any(target > sums[-1]):
        raise DetuningRangeError(
            "sum detuning outside the range covered by the pump spectrum "
            f"[{sums[0]:.3e}, {sums[-1]:.3e}] rad/s"
        )
    re = np.interp(target, sums, conv.real)
    im = np.interp(target, sums, conv.imag)
    return re + 1j * im


def phase_mismatch(
    d_omega_s: np.ndarray,
    d_omega_i: np.ndarray,
    p: FiberParams,
    include_beta2: bool = False,
    cw_power: float = 0.0,
) -> np.ndarray:
    """Wavevector mismatch (1/m) at the given signal/idler detunings.

    Linear part (relative beta1 convention):
        db = -dw_s beta1_s - dw_i beta1_i - 2 gamma_p P.
    With ``include_beta2`` the second-order expansion about the matched
    carriers adds beta2_p dw_p^2 - (beta2_s/2) dw_s^2 - (beta2_i/2) dw_i^2
    with dw_p = (dw_s + dw_i) / 2.
    """
    ws = np.asarray(d_omega_s, dtype=float)
    wi = np.asarray(d_omega_i, dtype=float)
    db = -ws * p.beta1_s - wi * p.beta1_i - 2.0 * p.gamma_p * cw_power
    if include_beta2:
        wp = 0.5 * (ws + wi)
        db = db + p.beta2_p * wp ** 2 - 0.5 * p.beta2_s * ws ** 2 - 0.5 * p.beta2_i * wi ** 2
    return db


def phasematch_G(delta_beta: np.ndarray, length: float) -> np.ndarray:
    """Finite-length phase-matching function e^{i x} sinc(x), x = db L / 2.

    Unnormalized sinc, sin(x)/x, with the removable singularity at 0
    evaluated as 1.
    """
    x = 0.5 * np.asarray(delta_beta, dtype=float) * length
    return np.exp(1j * x) * np.sinc(x / np.pi)


def build_jsa_analytic(
    pump: PumpEnvelope,
    p: FiberParams,
    s_grid: SpectralGrid,
    i_grid: SpectralGrid,
    include_beta2: bool = False,
    cw_power: float = 0.0,
) -> JointAmplitude:
    """Joint spectral amplitude F x G on the given detuning grids.

    The pump spectrum is taken on the dual of the pump's own time grid, so
    any envelope (Gaussian, square, chirped) contributes its actual
    spectral amplitude and phase.  The result is not normalized.
    """
    spectrum = transform_1d(pump.samples, "time_to_freq", pump.grid)
    pump_sgrid = dual_grid(pump.grid)
    ws = s_grid.detunings()
    wi = i_grid.detunings()
    sums = ws[:, None] + wi[None, :]
    f = pump_function_F(spectrum, pump_sgrid, sums)
    db = phase_mismatch(ws[:, None], wi[None, :], p, include_beta2, cw_power)
    matrix = f * phasematch_G(db, p.length)
    return JointAmplitude(matrix, s_grid, i_grid, Domain.FREQUENCY)
