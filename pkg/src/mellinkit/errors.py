"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at (or within tolerance of) a pole."""


class NonConvergenceError(ArithmeticError):
    """A quadrature did not converge: subdivision limit hit, the integrand
    tail never fell below tolerance, or the integrand is non-finite."""
