"""Exception types shared across the package.

The command-line frontend maps these onto exit codes: invalid inputs and
configuration problems exit with 2, capability-guard violations with 3.
"""


class QfpError(Exception):
    """Base class for all package errors."""


class InputShapeError(QfpError, ValueError):
    """An argument has the wrong length, shape, or alphabet."""


class DomainError(QfpError, ValueError):
    """A numeric argument lies outside the operation's domain."""


class ConfigError(QfpError, ValueError):
    """An experiment or protocol configuration is invalid."""


class CapabilityError(QfpError, RuntimeError):
    """The request exceeds a simulation guard (dimension, enumeration size)."""
