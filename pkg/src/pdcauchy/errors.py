"""Exception hierarchy shared by every module of the package."""


class PDCheckError(Exception):
    """Base class for all errors raised by pdcauchy."""


class NumericalError(PDCheckError):
    """Numerical evaluation could not be completed (CLI exit code 70)."""


class PoleOnAxis(NumericalError, ValueError):
    """A Cauchy kernel was requested at a point on the real axis."""


class InsufficientPower(NumericalError, ValueError):
    """Kernel power too small for the growth of a density atom."""


class QuadratureFailure(NumericalError):
    """Adaptive quadrature exhausted its evaluation budget."""


class FactorialOverflow(NumericalError):
    pass


class UnsupportedDistribution(PDCheckError, ValueError):
    """The distribution violates a pipeline precondition."""


class UnsupportedAtom(PDCheckError, ValueError):
    """An atom is outside the closed-form Fourier catalog."""


class UnsupportedOrder(PDCheckError, ValueError):
    pass


class NonUniformGrid(PDCheckError, ValueError):
    pass


class NormalizationError(PDCheckError, ValueError):
    """f(0) differs from 1 in strict characteristic-function mode."""


class SpecError(PDCheckError, ValueError):
    """A spec document failed schema validation or parsing (exit code 65)."""
