"""Exception hierarchy shared by all modules."""


class MVQJError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(MVQJError, ZeroDivisionError):
    pass


class InvalidTolerance(MVQJError, ValueError):
    pass


class NonConvergent(MVQJError):
    pass


class DomainError(MVQJError, ValueError):
    """Parameters outside the admissible domain of a family."""


class TerminationNotDetected(MVQJError):
    pass


class SingularLowerParameter(MVQJError, ZeroDivisionError):
    pass


class SizeMismatch(MVQJError, ValueError):
    pass


class InconsistentSamples(MVQJError):
    pass


class SingularMatrix(MVQJError, ZeroDivisionError):
    pass


class SingularMomentMatrix(SingularMatrix):
    pass


class CompatibilityViolated(MVQJError):
    pass


class NotPositiveDefinite(MVQJError):
    pass


class NotPolynomial(MVQJError):
    pass


class NotAnEigenfunction(MVQJError):
    pass


class SingularFactor(SingularMatrix):
    def __init__(self, step):
        super().__init__(f"I - q^{step} C is singular")
        self.step = step


class TerminationFailure(MVQJError):
    pass


class SingularP0(SingularMatrix):
    pass


class InterpolationDegreeMismatch(MVQJError):
    pass
