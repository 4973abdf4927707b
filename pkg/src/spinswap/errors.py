"""Exception types shared across the package."""


class DegenerateGeometryError(ValueError):
    """Raised when two points coincide and the exchange axis is undefined."""


class IdenticalSetError(ValueError):
    """Raised when a pair exchange is requested for non-identical quantum-number sets."""


class PhaseConsistencyError(RuntimeError):
    """Raised when term-wise exchange ratios disagree or cannot be extracted."""
