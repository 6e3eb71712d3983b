"""Top-hat spectral filtering of the heralding photon and rate bookkeeping.

Filtering the herald leaves the heralded photon lossless; the cost is a
reduced effective generation rate R T, with T the filter transmission.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DegenerateTransmissionError, DomainTagError
from .grid import Domain, JointAmplitude
from .schmidt import purity_of


@dataclass(frozen=True)
class FilterSpec:
    """Hard-edged (0/1) transmission window on one spectral axis.

    center=None places the window on the marginal-intensity centroid of the
    chosen axis, which maximizes transmission for symmetric marginals.
    """

    axis: str
    width: float
    center: float | None = None
    shape: str = "top-hat"

    def __post_init__(self) -> None:
        if self.axis not in ("signal", "idler"):
            raise ConfigError(f"filter axis must be 'signal' or 'idler', got {self.axis!r}")
        if not self.width > 0.0:
            raise ConfigError(f"filter width must be positive, got {self.width}")
        if self.shape != "top-hat":
            raise ConfigError(f"only top-hat filters are supported, got {self.shape!r}")


def marginal_centroid(jsa: JointAmplitude, axis: str) -> float:
    """Intensity-weighted mean detuning of one axis of the joint spectrum."""
    if jsa.domain is not Domain.FREQUENCY:
        raise DomainTagError("marginal centroid requires a frequency-domain amplitude")
    intensity = np.abs(jsa.matrix) ** 2
    if axis == "signal":
        marginal = intensity.sum(axis=1)
        w = jsa.signal_axis.detunings()
    else:
        marginal = intensity.sum(axis=0)
        w = jsa.idler_axis.detunings()
    return float(np.sum(w * marginal) / np.sum(marginal))


def apply_filter(jsa: JointAmplitude, spec: FilterSpec) -> tuple[JointAmplitude, float]:
    """Zero the joint spectrum outside the window; return (state, transmission).

    T is the ratio of filtered to unfiltered integrated joint intensity.
    The output is left unnormalized.  Raises DegenerateTransmissionError
    when no grid bin falls inside the window.
    """
    if jsa.domain is not Domain.FREQUENCY:
        raise DomainTagError("spectral filtering requires a frequency-domain amplitude")
    center = spec.center if spec.center is not None else marginal_centroid(jsa, spec.axis)
    w = jsa.signal_axis.detunings() if spec.axis == "signal" else jsa.idler_axis.detunings()
    window = np.abs(w - center) <= 0.5 * spec.width
    if not np.any(window):
        raise DegenerateTransmissionError(
            f"filter window (center {center:.3e}, width {spec.width:.3e} rad/s) "
            "contains no grid bin"
        )
    matrix = jsa.matrix.copy()
    if spec.axis == "signal":
        matrix[~window, :] = 0.0
    else:
        matrix[:, ~window] = 0.0
    total = float(np.sum(np.abs(jsa.matrix) ** 2))
    passed = float(np.sum(np.abs(matrix) ** 2))
    return jsa.with_matrix(matrix), passed / total


def effective_rate(rate: float, transmission: float) -> float:
    """Effective generation rate R T after heralding through the filter."""
    if rate < 0.0:
        raise ConfigError(f"rate must be >= 0, got {rate}")
    if not 0.0 <= transmission <= 1.0:
        raise ConfigError(f"transmission must lie in [0, 1], got {transmission}")
    return rate * transmission


def purity_vs_effective_rate(
    jsa_builder: Callable[[float], JointAmplitude],
    rates: Sequence[float],
    widths: Sequence[float],
    axis: str = "idler",
    center: float | None = None,
) -> list[dict]:
    """Herald-filtering curve family: one row per (rate, width).

    ``jsa_builder(rate)`` must return the frequency-domain state at that
    unfiltered rate.  Each row records the transmission, the effective rate
    R T, and the purity of the normalized filtered state.
    """
    rows = []
    for rate in rates:
        jsa = jsa_builder(rate)
        for width in widths:
            filtered, transmission = apply_filter(jsa, FilterSpec(axis, width, center))
            rows.append(
                {
                    "rate": float(rate),
                    "width": float(width),
                    "transmission": transmission,
                    "effective_rate": effective_rate(rate, transmission),
                    "purity": purity_of(filtered),
                }
            )
    return rows
