"""Exception hierarchy shared by all modules."""


class StableExtremaError(Exception):
    """Base class for every error raised by this package."""


class AdmissibilityError(StableExtremaError, ValueError):
    """The pair (alpha, rho) lies outside the admissible parameter set."""


class SubordinatorError(AdmissibilityError):
    """alpha in (0,1) with rho in {0, 1}: the process is a (negated)
    subordinator and its extrema are trivial."""


class DomainError(StableExtremaError, ValueError):
    """An argument lies outside the validity domain of the requested formula."""


class BranchCutError(DomainError):
    """Evaluation requested on the branch cut arg(z) = +-pi."""


class ConvergenceError(StableExtremaError, ArithmeticError):
    """A series or iterative refinement failed to converge within its budget."""


class QuadratureError(ConvergenceError):
    """Numerical integration did not reach the requested accuracy."""


class AccuracyError(StableExtremaError, ArithmeticError):
    """No available method attains the requested error tolerance."""


class PoleError(StableExtremaError, ArithmeticError):
    """Evaluation at (or too close to) a pole.

    Attributes
    ----------
    location : complex or None
        The offending pole.
    residue : complex or None
        Residue at the pole, when the caller can supply it.
    index : tuple or None
        Lattice index (m, n) of the pole, when it lies on a known lattice.
    """

    def __init__(self, message, location=None, residue=None, index=None):
        super().__init__(message)
        self.location = location
        self.residue = residue
        self.index = index


class PoleOrZeroError(PoleError):
    """Argument sits on the zero lattice of the double gamma function."""


class SmallDenominatorError(StableExtremaError, ArithmeticError):
    """A sine denominator degenerates: alpha is rational or too close to
    rational for the requested series/coefficients."""


class NearPoleWarning(UserWarning):
    """Evaluation close to a pole: accuracy is degraded."""
