"""Cross-cutting exception types."""


class NumericalError(RuntimeError):
    """An integrator produced a non-finite state or otherwise lost the solution."""
