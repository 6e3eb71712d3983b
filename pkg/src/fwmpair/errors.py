"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError becomes 2, any other
SimulationError becomes 3, and OS-level I/O failures become 4.
"""


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SimulationError):
    """Invalid run configuration: bad keys, values, or step constraints."""


class DimensionError(SimulationError):
    """Array length or matrix shape does not match its grid."""


class DomainTagError(SimulationError):
    """Operation applied to a joint amplitude in the wrong domain."""


class DomainError(SimulationError):
    """Scalar argument outside its mathematical domain (e.g. creation point
    beyond the fiber ends)."""


class ResolutionError(SimulationError):
    """Envelope feature too short for the grid spacing to resolve."""


class CoverageError(SimulationError):
    """Envelope or amplitude support does not fit inside the grid window."""


class DetuningRangeError(SimulationError):
    """Requested detuning lies outside the covered spectral range."""


class DegenerateWalkoffError(SimulationError):
    """Signal and idler inverse group velocities are too close to define
    creation coordinates."""


class DegenerateStateError(SimulationError):
    """Zero joint amplitude where a normalizable state is required."""


class DegenerateTransmissionError(SimulationError):
    """Spectral filter window does not overlap the grid."""
