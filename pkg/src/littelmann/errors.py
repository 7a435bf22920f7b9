"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CapExceededError(RuntimeError):
    """Crystal generation hit its node cap.

    ``partial`` carries whatever statistics were gathered before stopping
    (node count, frontier size, depth reached).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = dict(partial or {})
