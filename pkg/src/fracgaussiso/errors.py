"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateSetError(DomainError):
    """A set of Gaussian measure 0 or 1 where a proper set is required."""


class QuadratureError(RuntimeError):
    """A root/eigenvalue or quadrature computation failed to converge."""


class ResolutionError(RuntimeError):
    """A grid-based extraction exceeded its resolution contract."""


class SetParseError(ValueError):
    """Malformed set-description text; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
