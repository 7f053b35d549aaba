"""Exception types shared across the package."""


class CodeConstructionError(Exception):
    """A code (or field) could not be built from the given parameters."""


class UnsupportedSizeError(Exception):
    """An exhaustive operation was requested beyond its feasibility bound."""


class DecodingError(Exception):
    """Decoding could not proceed (e.g. context preparation failed)."""


class ConfigError(Exception):
    """A simulation configuration is invalid; raised before any simulation runs."""
