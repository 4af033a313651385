"""Exception types shared across the package.

Each class maps to a distinct CLI exit code, see qspair.cli.
"""


class QspairError(Exception):
    """Base class for all package errors."""


class ParameterError(QspairError):
    """Invalid dimension, rank or deformation parameter."""


class ShapeError(QspairError):
    """Tensor-leg or matrix dimension mismatch."""


class DomainError(QspairError):
    """Input outside the mathematical domain of an operation."""


class ResonanceError(QspairError):
    """A Sylvester solve in the Frobenius recursion is (near-)singular.

    Attributes:
        k: the series order at which the resonance occurs.
    """

    def __init__(self, k, detail=""):
        self.k = k
        msg = f"resonant Sylvester solve at series order k={k}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class TruncationError(QspairError):
    """A Frobenius series did not converge within max_order.

    Attributes:
        tail_estimate: bound on the neglected tail.
    """

    def __init__(self, tail_estimate, max_order):
        self.tail_estimate = tail_estimate
        self.max_order = max_order
        super().__init__(
            f"series not converged after {max_order} terms, "
            f"tail estimate {tail_estimate:.3e}"
        )


class StructuralError(QspairError):
    """An internal consistency condition failed (likely bug or unsupported pair)."""


class ComparisonError(QspairError):
    """Eigenvalue or trace matching between the two quantizations failed."""
