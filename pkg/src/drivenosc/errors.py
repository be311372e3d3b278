"""Exception types shared across the package."""


class DrivenOscError(Exception):
    """Base class for all package-specific failures."""


class ResonanceError(DrivenOscError):
    """Drive frequency too close to an oscillator frequency for the closed form."""


class GridError(DrivenOscError):
    """Time grid is empty, non-monotone, non-uniform where uniformity is required,
    or does not start at zero."""


class NonFiniteError(DrivenOscError):
    """A state or derivative became NaN or infinite during integration."""


class TruncationError(DrivenOscError):
    """Fock-space tail mass exceeded the safety threshold; the basis is too small."""


class DimensionError(DrivenOscError):
    """Operands live in Fock spaces of different dimension."""


class IncommensurateError(DrivenOscError):
    """No integer frequency ratio p/q within the requested denominator bound."""


class OpenCurveError(DrivenOscError):
    """Loop samples do not close; signed area is undefined."""


class ConfigError(DrivenOscError):
    """Run configuration file is missing, malformed, or violates a constraint."""
