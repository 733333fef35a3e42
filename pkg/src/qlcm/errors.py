"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A request exceeds a configured capacity limit (never silently truncated)."""
