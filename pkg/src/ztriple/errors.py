"""Exception hierarchy.

Two families: :class:`PreconditionError` (bad input; the CLI maps it to exit
code 2) and :class:`NumericalError` (the numerics could not deliver the
requested accuracy; exit code 3).
"""


class ZTripleError(Exception):
    pass


class PreconditionError(ZTripleError, ValueError):
    pass


class NumericalError(ZTripleError, ArithmeticError):
    pass


class InvalidInterval(PreconditionError):
    pass


class AtPole(PreconditionError):
    pass


class OutsideConvergence(PreconditionError):
    pass


class NotImplementedRegion(PreconditionError):
    pass


class UnsupportedSpectrum(PreconditionError):
    pass


class NotGraded(PreconditionError):
    pass


class NonConvergent(NumericalError):
    pass


class PoleTooClose(NumericalError):
    pass


class Inconsistent(NumericalError):
    pass


class DegenerateConnection(NumericalError):
    pass


class IdentityViolated(NumericalError):
    pass


class NotUnitary(NumericalError):
    pass
