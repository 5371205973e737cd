"""Exceptions shared by more than one pipeline stage."""


class EngineUnavailable(RuntimeError):
    """An external engine process could not be started or exited abnormally."""


class ProtocolViolation(ValueError):
    """An engine produced output that breaks its wire contract."""


class LengthMismatch(ValueError):
    """Paired sequences differ in length."""
