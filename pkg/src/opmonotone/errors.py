"""Exception hierarchy shared by every module of the package."""


class OperatorLabError(Exception):
    """Base class for all package errors."""


class NotHermitianError(OperatorLabError, ValueError):
    pass


class DimensionError(OperatorLabError, ValueError):
    pass


class ConvergenceError(OperatorLabError, ArithmeticError):
    """Jacobi iteration did not converge; carries the off-diagonal residual."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class DomainError(OperatorLabError, ValueError):
    """An eigenvalue falls outside the domain of a scalar function."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class HypothesisError(OperatorLabError, ValueError):
    """An instance does not satisfy the hypotheses of the statement being checked.

    This is a precondition failure, never a counterexample.
    """


class RepresentationError(OperatorLabError, ValueError):
    pass


class UnsupportedError(OperatorLabError, NotImplementedError):
    pass


class GenerationError(OperatorLabError, RuntimeError):
    """Rejection budget exhausted while sampling an instance."""

    def __init__(self, message, attempts=0, accepted=0):
        super().__init__(message)
        self.attempts = attempts
        self.accepted = accepted

    @property
    def acceptance_rate(self):
        return self.accepted / self.attempts if self.attempts else 0.0


class ReportSchemaError(OperatorLabError, ValueError):
    pass
