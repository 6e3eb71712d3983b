"""Versioned fiber presets.

Two birefringent microstructured fibers are included, plus generic
walk-off-only configurations for the dispersion-free models:

fiberA-726
    Pump at 726 nm group-velocity matched to the idler at 864 nm, signal at
    626 nm walking off (asymmetric scheme, normal pump dispersion).
fiberB-1064
    Pump at 1064 nm in the anomalous regime, signal at 810 nm matched to the
    pump, idler at 1550 nm walking off.
asymmetric-generic / symmetric-generic
    Dispersion-free configurations with degenerate carriers for studies
    parameterized purely by the walk-off to pulse-duration ratio.

The magnitude of gamma_p is a documented placeholder (0.1 /W/m, a typical
microstructured-fiber scale): every reported quantity is parameterized by
the generation rate, which fixes the product of power and nonlinearity, so
results do not depend on the absolute gamma.  The gamma_s : gamma_i :
gamma_p ratios do matter and come from the cross-polarized factor of three
and the carrier frequency ratios.  Idler carriers are derived from energy
conservation rather than quoted nominal values (864 nm -> 864.023 nm,
1550 nm -> 1550.074 nm) so the parameter sets are exactly consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .fiber import FiberParams, cross_polarized_params


@dataclass(frozen=True)
class FiberPreset:
    """Immutable named parameter set; bump the version on any change."""

    name: str
    version: str
    params: FiberParams
    description: str


def _fiber_a(length: float = 0.5) -> FiberParams:
    return cross_polarized_params(
        length=length,
        beta1_s=1.14e-11,
        beta1_i=0.0,
        beta2_p=2.1e-26,
        beta2_s=3.6e-26,
        beta2_i=-1.3e-26,
        gamma_p=0.1,
        lambda_p0=726e-9,
        lambda_s0=626e-9,
    )


def _fiber_b(length: float = 0.5) -> FiberParams:
    return cross_polarized_params(
        length=length,
        beta1_s=0.0,
        beta1_i=1.2e-11,
        beta2_p=-8.7e-27,
        beta2_s=1.0e-26,
        beta2_i=-6.4e-26,
        gamma_p=0.1,
        lambda_p0=1064e-9,
        lambda_s0=810e-9,
    )


def _asymmetric_generic(length: float = 0.5) -> FiberParams:
    return cross_polarized_params(
        length=length,
        beta1_s=1.14e-11,
        beta1_i=0.0,
        beta2_p=0.0,
        beta2_s=0.0,
        beta2_i=0.0,
        gamma_p=0.1,
        lambda_p0=726e-9,
        lambda_s0=726e-9,
        lambda_i0=726e-9,
    )


def _symmetric_generic(length: float = 0.5) -> FiberParams:
    return cross_polarized_params(
        length=length,
        beta1_s=5.7e-12,
        beta1_i=-5.7e-12,
        beta2_p=0.0,
        beta2_s=0.0,
        beta2_i=0.0,
        gamma_p=0.1,
        lambda_p0=726e-9,
        lambda_s0=726e-9,
        lambda_i0=726e-9,
    )


_BUILDERS = {
    "fiberA-726": (_fiber_a, "1", "726 nm pump, idler group-velocity matched, real dispersion"),
    "fiberB-1064": (_fiber_b, "1", "1064 nm pump, signal group-velocity matched, anomalous dispersion"),
    "asymmetric-generic": (_asymmetric_generic, "1", "idler matched to pump, no dispersion, degenerate carriers"),
    "symmetric-generic": (_symmetric_generic, "1", "signal/idler walk off symmetrically, no dispersion"),
}


def preset_names() -> list[str]:
    return list(_BUILDERS)


def get_preset(name: str, length: float | None = None) -> FiberPreset:
    """Look up a preset, optionally overriding the fiber length."""
    if name not in _BUILDERS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(_BUILDERS)}"
        )
    builder, version, description = _BUILDERS[name]
    params = builder(length) if length is not None else builder()
    return FiberPreset(name, version, params, description)


def list_presets() -> list[FiberPreset]:
    return [get_preset(name) for name in _BUILDERS]
