class ReductionToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class FuelExhaustedError(ReductionToolkitError):
    """A bounded search or a lazy demand ran out of fuel."""

    def __init__(self, message: str, fuel: int = 0):
        super().__init__(message)
        self.fuel = fuel


class DemandExceeded(ReductionToolkitError):
    """A guarded input window was read past its current limit."""

    def __init__(self, index: int, limit: int):
        super().__init__(f"input index {index} beyond window {limit}")
        self.index = index
        self.limit = limit


class InvalidNameError(ReductionToolkitError):
    """A name violates its modulus or structure at an inspected index."""


class EmptyTreeError(ReductionToolkitError):
    """A tree has no infinite path (or no live reachable state)."""


class DomainViolationError(ReductionToolkitError):
    """An intermediate value falls outside the next problem's domain."""


class ProblemTypeError(ReductionToolkitError):
    """Problems or reductions were combined across mismatched types."""


class ReductionMismatchError(ProblemTypeError):
    """Chained reductions do not share their middle problem."""


class OracleClassMismatchError(ReductionToolkitError):
    """An oracle was asked about an instance outside its class."""


class MalformedInstanceError(ReductionToolkitError):
    """An instance violates its declared invariants."""


class UnknownIdError(ReductionToolkitError):
    """A registry lookup failed."""
