"""Exception types shared across the package."""


class DomainError(ValueError):
    """Arguments outside an operation's mathematical domain."""


class UsageError(ValueError):
    """Structurally invalid call: mismatched lattices, bad weight vectors, etc."""


class ResourceError(RuntimeError):
    """A configured desk-scale cap would be exceeded."""


class FormatError(ValueError):
    """A cache file is corrupt, truncated, or has an unsupported version."""
