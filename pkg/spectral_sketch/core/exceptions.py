"""Error hierarchy. Every error is a ``ValueError`` so callers that only know
about bad input can keep catching that."""


class SketchError(ValueError):
    """Base class for all errors raised by the library."""


class GraphValidationError(SketchError):
    """Raised when an edge list violates the graph invariants."""


class GraphFormatError(SketchError):
    """Raised when an edge-list or query-vector file cannot be parsed."""


class DimensionMismatchError(SketchError):
    """Raised when a query vector does not match the vertex count."""


class DisconnectedGraphError(SketchError):
    """Raised when an operation needs a connected graph."""


class GraphTooLargeError(SketchError):
    """Raised when an exhaustive oracle is asked to enumerate too much."""


class WeightSpreadError(SketchError):
    """Raised when edge weights are not within a factor of two."""


class WeightRatioError(SketchError):
    """Raised when w_max / w_min exceeds the polynomial bound."""


class InvalidParameterError(SketchError):
    """Raised for out-of-range numeric parameters."""


class SparsifierError(SketchError):
    pass


class EigensolverError(SketchError):
    pass


class PartitionInvariantError(SketchError):
    """Raised when a decomposition breaks one of its proven bounds."""


class PropertyViolationError(SketchError):
    """Raised when a stratum does not satisfy its degree-class property."""


class SketchFormatError(SketchError):
    """Raised when a sketch file is malformed."""
