"""Custom exceptions for the rate-region toolkit."""


class ToolkitError(Exception):
    """Base exception for all toolkit errors."""
    pass


class DomainError(ToolkitError, ValueError):
    """Argument lies outside the domain of an operation."""

    def __init__(self, name: str, value: object, domain: str):
        self.name = name
        self.value = value
        self.domain = domain
        super().__init__(f"{name}={value!r} outside domain {domain}")


class InvalidDistributionError(DomainError):
    """Probability vector or channel row is not stochastic."""

    def __init__(self, name: str, reason: str):
        self.reason = reason
        super().__init__(name, reason, "probability simplex")


class GridParameterError(DomainError):
    """Invalid auxiliary cardinality or grid resolution."""
    pass


class DimensionMismatchError(ToolkitError, ValueError):
    """Shapes of the operands are incompatible."""

    def __init__(self, expected: object, got: object, what: str = "shape"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} mismatch: expected {expected}, got {got}")


class RootNotBracketedError(ToolkitError):
    """Endpoints of a root-finding bracket have the same sign."""

    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float):
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"root not bracketed: f({lo})={f_lo:.3e}, f({hi})={f_hi:.3e}"
        )


class PreconditionError(ToolkitError):
    """Input violates a structural precondition of the operation."""
    pass


class EmptyInputError(ToolkitError, ValueError):
    """Operation requires at least one input element."""
    pass


class CodebookError(ToolkitError):
    """Malformed codebook or decoding map."""
    pass


class BlocklengthTooLargeError(CodebookError):
    """Blocklength exceeds the exhaustive-enumeration cap."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(
            f"blocklength n={n} too large for exact enumeration (limit {limit})"
        )


class ConfigError(ToolkitError, ValueError):
    """Configuration is invalid."""
    pass
