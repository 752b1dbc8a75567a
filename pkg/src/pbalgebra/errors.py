"""Exception types raised across the package."""


class ShapeError(ValueError):
    """Operands have incompatible dimensions."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation accepts."""


class NonConvergenceError(RuntimeError):
    """An iterative procedure hit its iteration cap."""


class ClosureViolationError(RuntimeError):
    """A basis is not closed under the bracket."""

    def __init__(self, pair, residual):
        self.pair = pair
        self.residual = residual
        super().__init__(
            f"bracket of basis elements {pair} leaves the span (residual {residual:.3e})"
        )
