"""Fiber parameters for pulsed four-wave-mixing pair generation.

Inverse group velocities are stored relative to the pump (beta1_m minus the
pump's beta1), i.e. everything lives in the frame moving with the pump
pulse, and the pump itself carries no beta1 anywhere in this package.
Nonlinear coefficients gamma are effective values in 1/(W m) with |E|^2
measured in watts; absolute wavevectors are eliminated by choosing the
carrier frequencies at an exactly phase-matched point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

C_LIGHT = 299792458.0  # m/s

ENERGY_MATCH_RTOL = 1e-6


@dataclass(frozen=True)
class FiberParams:
    """Length, relative walk-off, dispersion, nonlinearity, and carriers.

    beta1_s / beta1_i : s/m, inverse group velocity relative to the pump
    beta2_*           : s^2/m, group-velocity dispersion at each carrier
    gamma_*           : 1/(W m), effective nonlinear coefficients
    lambda_*0         : m, carrier wavelengths at exact phase matching
    """

    length: float
    beta1_s: float
    beta1_i: float
    beta2_p: float
    beta2_s: float
    beta2_i: float
    gamma_p: float
    gamma_s: float
    gamma_i: float
    lambda_p0: float
    lambda_s0: float
    lambda_i0: float

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise ConfigError(f"fiber length must be positive, got {self.length}")
        if not self.gamma_p > 0.0:
            raise ConfigError(f"gamma_p must be positive, got {self.gamma_p}")
        if self.gamma_s < 0.0 or self.gamma_i < 0.0:
            raise ConfigError("gamma_s and gamma_i must be non-negative")
        for lam in (self.lambda_p0, self.lambda_s0, self.lambda_i0):
            if not lam > 0.0:
                raise ConfigError("carrier wavelengths must be positive")
        mismatch = 2.0 / self.lambda_p0 - 1.0 / self.lambda_s0 - 1.0 / self.lambda_i0
        if abs(mismatch) > ENERGY_MATCH_RTOL * (2.0 / self.lambda_p0):
            raise ConfigError(
                "carrier wavelengths violate energy conservation: "
                f"2/lambda_p - 1/lambda_s - 1/lambda_i = {mismatch:.3e} 1/m; "
                "use matched_idler_wavelength() to derive the idler carrier"
            )

    @property
    def omega_p0(self) -> float:
        return 2.0 * np.pi * C_LIGHT / self.lambda_p0

    @property
    def omega_s0(self) -> float:
        return 2.0 * np.pi * C_LIGHT / self.lambda_s0

    @property
    def omega_i0(self) -> float:
        return 2.0 * np.pi * C_LIGHT / self.lambda_i0


def matched_idler_wavelength(lambda_p0: float, lambda_s0: float) -> float:
    """Idler carrier wavelength fixed by 2/lambda_p = 1/lambda_s + 1/lambda_i."""
    inv = 2.0 / lambda_p0 - 1.0 / lambda_s0
    if inv <= 0.0:
        raise ConfigError(
            f"no physical idler for lambda_p = {lambda_p0} and lambda_s = {lambda_s0}"
        )
    return 1.0 / inv


def cross_polarized_params(
    length: float,
    beta1_s: float,
    beta1_i: float,
    beta2_p: float,
    beta2_s: float,
    beta2_i: float,
    gamma_p: float,
    lambda_p0: float,
    lambda_s0: float,
    lambda_i0: float | None = None,
) -> FiberParams:
    """Build parameters for birefringent phase matching with the photons
    polarized orthogonally to the pump.

    Cross-polarized nonlinear coupling is a factor of three weaker than
    co-polarized coupling, so gamma_s and gamma_i are set to
    gamma_p * (omega_m0 / omega_p0) / 3.  The idler carrier defaults to the
    energy-matched wavelength.
    """
    if lambda_i0 is None:
        lambda_i0 = matched_idler_wavelength(lambda_p0, lambda_s0)
    gamma_s = gamma_p * (lambda_p0 / lambda_s0) / 3.0
    gamma_i = gamma_p * (lambda_p0 / lambda_i0) / 3.0
    return FiberParams(
        length=length,
        beta1_s=beta1_s,
        beta1_i=beta1_i,
        beta2_p=beta2_p,
        beta2_s=beta2_s,
        beta2_i=beta2_i,
        gamma_p=gamma_p,
        gamma_s=gamma_s,
        gamma_i=gamma_i,
        lambda_p0=lambda_p0,
        lambda_s0=lambda_s0,
        lambda_i0=lambda_i0,
    )
