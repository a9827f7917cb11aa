"""Exception types shared across the package."""


class DGQuiverError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(DGQuiverError):
    """Malformed quivers, elements, presentations or CLI parameters."""


class ResourceLimitError(DGQuiverError):
    """A path-enumeration cap was exceeded (see DGQ_PATH_CAP)."""
