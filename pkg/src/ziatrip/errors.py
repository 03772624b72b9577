"""Shared exception types."""


class ValidationError(ValueError):
    """A domain invariant was violated. Carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ProviderError(RuntimeError):
    """An external provider call failed after retries.

    ``retryable`` distinguishes transient failures (timeouts, 5xx) from
    permanent ones. ``degraded`` tells callers a template fallback is expected.
    """

    def __init__(self, message: str, retryable: bool = True, degraded: bool = True,
                 failed_indices: list | None = None):
        self.retryable = retryable
        self.degraded = degraded
        self.failed_indices = failed_indices or []
        super().__init__(message)


class TerminalStateError(RuntimeError):
    """Operation attempted on a closed session."""
