"""Exception types shared across the library."""


class HopfGeoError(Exception):
    """Base class for all library errors."""


class NotTangent(HopfGeoError):
    """Raised when a vector fails the tangency test Re<v, z> = 0."""


class DimensionMismatch(HopfGeoError):
    """Raised when an operation requires a specific ambient dimension."""


class InvalidRatio(HopfGeoError):
    """Raised by classify() for c outside [0, 1) or a non-coprime pair."""


class OmegaOutOfRange(HopfGeoError):
    """Raised when a fiber phase lies outside (0, 2*pi)."""


class DegenerateOmega(HopfGeoError):
    """Raised for omega = 0: distance zero, no geodesic needed."""


class NotOnHorizontalSphere(HopfGeoError):
    """Raised when an endpoint handed to the horizontal-sphere solver has Im z1 != 0."""


class NoRootsInRange(HopfGeoError):
    """Signals that no transcendental roots were found in the scanned intervals."""


class EndpointOnSpecialLocus(HopfGeoError):
    """Raised by the general solver for endpoints belonging to a dedicated case."""


class NoSolutionWithinQmax(HopfGeoError):
    """Raised when no branch admits a root for any q <= q_max."""


class OracleNoCandidate(HopfGeoError):
    """Raised when the shooting oracle's grid refinement accepts no candidate."""


class InconsistentMinimizer(HopfGeoError):
    """Raised when the dispatch formula and the enumerated minimum disagree.

    This signals an implementation bug and is never swallowed.
    """


class DomainError(HopfGeoError):
    """Raised when a special function is evaluated outside its domain."""
