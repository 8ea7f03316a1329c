"""Exception hierarchy shared by the simulator modules."""


class LhmError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(LhmError, ValueError):
    """Invalid physical or grid parameters."""


class NumericalError(LhmError):
    """A computation could not produce a trustworthy number."""


class DegenerateSteadyStateError(NumericalError):
    """The generator does not have a unique steady state."""


class PoleError(NumericalError):
    """Clausius-Mossotti denominator vanished.

    ``value`` carries the offending product N*gamma.
    """

    def __init__(self, message, value):
        super().__init__(message)
        self.value = value


class IntegrationError(NumericalError):
    """Fixed-step time integration went unstable."""


class CalibrationError(NumericalError):
    """Dipole calibration could not reach its target window."""


class ConfigError(LhmError, ValueError):
    """Malformed or unsupported configuration text."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
