"""Exception hierarchy shared by all capillum modules."""


class CapillumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CapillumError, ValueError):
    """An argument lies outside the domain of a formula."""


class RadiusOutOfRange(DomainError):
    pass


class OverlappingCaps(CapillumError, ValueError):
    """Two open base caps intersect."""

    def __init__(self, i: int, j: int, distance: float, radius_sum: float):
        self.pair = (i, j)
        self.distance = distance
        self.radius_sum = radius_sum
        super().__init__(
            f"caps {i} and {j} overlap: distance {distance!r} < radius sum {radius_sum!r}"
        )


class VertexInsideBall(DomainError):
    pass


class DomainViolation(DomainError):
    """An interval argument lies strictly outside the domain of acos/sqrt/division."""


class TieUnresolved(CapillumError, ArithmeticError):
    """Directed rounding could not separate a value from a grid point."""


class InfeasibleModel(CapillumError):
    pass


class UnboundedModel(CapillumError):
    """A positive-profit item has zero weight and no cardinality cap."""


class VerificationFailed(CapillumError):
    pass


class SearchExhausted(CapillumError):
    """No sampled rotation left at most the allowed number of caps unlit."""
