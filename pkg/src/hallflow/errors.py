"""Exception hierarchy shared by every module."""


class HallflowError(Exception):
    """Base class for all library errors."""


class ParameterError(HallflowError, ValueError):
    """Invalid physical or shape parameter."""


class InvalidDensityError(ParameterError):
    pass


class ResonanceError(ParameterError):
    """A denominator such as rho - alpha1*a**2 vanishes."""


class ConstraintViolationError(ParameterError):
    """The cross-term constraint rho = alpha1*(a**2 + b**2) does not hold."""


class FamilyInapplicableError(ParameterError):
    pass


class DegenerateRootError(ParameterError):
    pass


class DomainError(HallflowError, ValueError):
    """Argument outside the domain of a special function."""


class PoleError(DomainError):
    pass


class RegionError(DomainError):
    """Argument outside the region where the hypergeometric series is supported."""


class ConvergenceError(HallflowError, ArithmeticError):
    pass


class NoClosedFormError(HallflowError):
    pass


class StencilError(HallflowError, ArithmeticError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class InconsistentFieldError(HallflowError):
    """Momentum equations are not integrable for the supplied field."""


class EmptyFieldError(HallflowError):
    pass
