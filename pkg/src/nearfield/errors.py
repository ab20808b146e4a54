"""Exception types shared across the package."""


class NearFieldError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(NearFieldError):
    """Invalid scenario, sweep, or CLI configuration."""


class DomainError(NearFieldError):
    """Numerically undefined geometry or channel state."""


class SingularDisplacementError(DomainError):
    """Field evaluation requested at (or on) the source itself."""


class NullChannelError(DomainError):
    """An identically-zero channel vector where a direction is required."""
