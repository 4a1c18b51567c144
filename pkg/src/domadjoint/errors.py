"""Exception types shared across the package."""


class DomAdjointError(Exception):
    """Base class for all domain errors raised by this package."""


class MalformedGraph6(DomAdjointError):
    """graph6 text that cannot be decoded (bad character, truncated bits, ...)."""


class IsolatedVertex(DomAdjointError):
    """Structurally valid graph that contains a degree-zero vertex."""


class VertexOutOfRange(DomAdjointError):
    """Vertex index outside 0..n-1 for the host graph."""


class OracleLimitExceeded(DomAdjointError):
    """Graph too large for an exhaustive-enumeration routine."""


class NotInDominatingSet(DomAdjointError):
    """Private-neighbor query for a vertex that is not in the given set."""


class NotMinimum(DomAdjointError):
    """Seed set is not a minimum dominating set."""


class InternalContradiction(DomAdjointError):
    """A theorem-backed internal invariant failed; indicates a bug."""


class NotCanonical(DomAdjointError):
    """Dominating set where some member has no private neighbor."""


class DomainViolation(DomAdjointError):
    """Vertex-pair map queried outside its domain."""


class NotDominating(DomAdjointError):
    """Operation requires a dominating set but the given set is not one."""


class ProductTooLarge(DomAdjointError):
    """Cartesian product would exceed the configured vertex cap."""
