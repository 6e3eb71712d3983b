"""Uniform time/frequency grids and the unitary transforms linking them.

Fields are decomposed as a slowly varying envelope times a carrier
e^{i(beta0 z - omega0 t)}, so a component at detuning dw contributes a time
dependence e^{-i dw t}.  The time -> frequency transform below therefore
uses the e^{+i dw t} kernel.  Both directions carry 1/sqrt(n), making them
unitary: norms are preserved exactly and rate integrals can be evaluated in
either domain.

Grids are centred so that index n // 2 is the origin (by convention the
pump-pulse peak in the frame moving with the pump).  Spectral phases
produced by the transforms are referenced to that centre sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from enum import Enum

import numpy as np

from .errors import DimensionError, DomainTagError

TWO_PI = 2.0 * np.pi


class Domain(Enum):
    """Which pair of axes a joint amplitude currently lives on."""

    TIME = "time"
    FREQUENCY = "frequency"


@dataclass(frozen=True)
class TemporalGrid:
    """Uniform time axis: ``n_points`` samples spaced ``dt`` seconds.

    Power-of-two sizes transform fastest but any n >= 8 is supported.
    """

    n_points: int
    dt: float
    t_center: float = 0.0

    def __post_init__(self) -> None:
        if self.n_points < 8:
            raise DimensionError(f"grid needs n_points >= 8, got {self.n_points}")
        if not self.dt > 0.0:
            raise DimensionError(f"grid needs dt > 0, got {self.dt}")

    @property
    def span(self) -> float:
        """Total window length n_points * dt in seconds."""
        return self.n_points * self.dt

    def times(self) -> np.ndarray:
        return self.t_center + (np.arange(self.n_points) - self.n_points // 2) * self.dt


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform detuning axis in rad/s, conjugate to a :class:`TemporalGrid`.

    d_omega = 2 pi / (n dt) for the dual temporal grid.  The private fields
    remember the originating dt and t_center so that a frequency -> time
    round trip restores them bit for bit.
    """

    n_points: int
    d_omega: float
    omega_center: float = 0.0
    _dual_dt: float | None = field(default=None, compare=False, repr=False)
    _dual_t_center: float = field(default=0.0, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n_points < 8:
            raise DimensionError(f"grid needs n_points >= 8, got {self.n_points}")
        if not self.d_omega > 0.0:
            raise DimensionError(f"grid needs d_omega > 0, got {self.d_omega}")

    @property
    def span(self) -> float:
        """Total detuning window n_points * d_omega in rad/s."""
        return self.n_points * self.d_omega

    def detunings(self) -> np.ndarray:
        return self.omega_center + (np.arange(self.n_points) - self.n_points // 2) * self.d_omega


def dual_grid(g: TemporalGrid) -> SpectralGrid:
    """Conjugate frequency grid, d_omega = 2 pi / (n dt), centred at zero detuning."""
    return SpectralGrid(
        g.n_points,
        TWO_PI / (g.n_points * g.dt),
        0.0,
        _dual_dt=g.dt,
        _dual_t_center=g.t_center,
    )


def dual_time_grid(g: SpectralGrid) -> TemporalGrid:
    """Inverse of :func:`dual_grid`; exact when ``g`` came from dual_grid."""
    if g._dual_dt is not None:
        return TemporalGrid(g.n_points, g._dual_dt, g._dual_t_center)
    return TemporalGrid(g.n_points, TWO_PI / (g.n_points * g.d_omega), g._dual_t_center)


def transform_1d(
    samples: np.ndarray,
    direction: str,
    grid: TemporalGrid | SpectralGrid | None = None,
) -> np.ndarray:
    """Unitary discrete transform between centred time and frequency samples.

    direction is "time_to_freq" or "freq_to_time".  With the e^{-i dw t}
    component convention the forward kernel is e^{+i dw t}, i.e. numpy's
    inverse FFT; the shifts keep the centre sample at index n // 2 acting as
    the origin in both domains.

    Raises DimensionError when the sample count disagrees with ``grid``.
    """
    x = np.asarray(samples)
    if x.ndim != 1:
        raise DimensionError(f"expected a 1D vector, got shape {x.shape}")
    if grid is not None and x.shape[0] != grid.n_points:
        raise DimensionError(
            f"sample count {x.shape[0]} does not match grid n_points {grid.n_points}"
        )
    if direction == "time_to_freq":
        return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(x), norm="ortho"))
    if direction == "freq_to_time":
        return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(x), norm="ortho"))
    raise ValueError(f"unknown transform direction {direction!r}")


@dataclass(frozen=True, eq=False)
class JointAmplitude:
    """Two-photon amplitude over (signal axis x idler axis).

    ``rate_scale`` is a real amplitude factor split off the matrix; the
    physical amplitude is rate_scale * matrix.  Normalization moves the
    matrix norm into rate_scale so the pair probability per pulse stays
    recoverable from a unit-norm state.
    """

    matrix: np.ndarray
    signal_axis: TemporalGrid | SpectralGrid
    idler_axis: TemporalGrid | SpectralGrid
    domain: Domain
    rate_scale: float = 1.0

    def __post_init__(self) -> None:
        m = self.matrix
        if m.ndim != 2:
            raise DimensionError(f"joint amplitude must be 2D, got shape {m.shape}")
        if m.shape != (self.signal_axis.n_points, self.idler_axis.n_points):
            raise DimensionError(
                f"matrix shape {m.shape} does not match axes "
                f"({self.signal_axis.n_points}, {self.idler_axis.n_points})"
            )
        want = TemporalGrid if self.domain is Domain.TIME else SpectralGrid
        if not (isinstance(self.signal_axis, want) and isinstance(self.idler_axis, want)):
            raise DomainTagError(
                f"{self.domain.value}-domain amplitude requires {want.__name__} axes"
            )

    @property
    def spacings(self) -> tuple[float, float]:
        """(signal, idler) grid spacings: dt in seconds or d_omega in rad/s."""
        if self.domain is Domain.TIME:
            return self.signal_axis.dt, self.idler_axis.dt
        return self.signal_axis.d_omega, self.idler_axis.d_omega

    def axis_values(self) -> tuple[np.ndarray, np.ndarray]:
        if self.domain is Domain.TIME:
            return self.signal_axis.times(), self.idler_axis.times()
        return self.signal_axis.detunings(), self.idler_axis.detunings()

    def norm(self) -> float:
        """L2 norm of the stored matrix including the grid measure."""
        ds, di = self.spacings
        return float(np.sqrt(np.sum(np.abs(self.matrix) ** 2) * ds * di))

    def with_matrix(self, matrix: np.ndarray, rate_scale: float | None = None) -> "JointAmplitude":
        return replace(
            self,
            matrix=matrix,
            rate_scale=self.rate_scale if rate_scale is None else rate_scale,
        )


def transform_2d(ja: JointAmplitude) -> JointAmplitude:
    """2D unitary transform of a joint amplitude, flipping its domain tag.

    Applies the 1D convention of :func:`transform_1d` along both axes, so a
    separable product transforms to the outer product of the 1D transforms
    and the round trip is the identity to machine precision.
    """
    shifted = np.fft.ifftshift(ja.matrix)
    if ja.domain is Domain.TIME:
        out = np.fft.ifft2(shifted, norm="ortho")
        s_axis = dual_grid(ja.signal_axis)
        i_axis = dual_grid(ja.idler_axis)
        domain = Domain.FREQUENCY
    else:
        out = np.fft.fft2(shifted, norm="ortho")
        s_axis = dual_time_grid(ja.signal_axis)
        i_axis = dual_time_grid(ja.idler_axis)
        domain = Domain.TIME
    return JointAmplitude(np.fft.fftshift(out), s_axis, i_axis, domain, ja.rate_scale)
