"""Shared exception types."""


class UnsupportedClassError(ValueError):
    """Requested operation is not implemented for this class/distribution combination."""


class SizeLimitError(ValueError):
    """Input exceeds a guard that keeps exact enumeration at desk scale."""
