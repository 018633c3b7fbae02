"""Shared exception types."""


class DimensionError(ValueError):
    """Operands act on different qubit counts or vector lengths."""


class ResourceError(RuntimeError):
    """A dense realization or state vector would exceed the configured size limit."""
