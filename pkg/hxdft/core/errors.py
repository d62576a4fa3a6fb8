"""
hxdft - Errors

Exception hierarchy shared by the core modules and the command line.
"""


class HxdftError(ValueError):
    """Base class for every error raised by hxdft"""


class AlgebraMismatchError(HxdftError):
    """Operands belong to different algebras"""


class DimensionMismatchError(HxdftError):
    """Array shapes do not agree with the algebra, root or signal"""


class FieldMismatchError(HxdftError):
    """A complex quantity met real-only storage"""


class NotInImageError(HxdftError):
    """A matrix is not the representation of any algebra element"""


class ConstraintViolationError(HxdftError):
    """Constructor parameters are off the root-of-minus-one constraint surface"""


class RootValidationError(HxdftError):
    """A matrix failed root validation; carries the rejection report"""

    def __init__(self, rejection):
        super().__init__(rejection.message)
        self.rejection = rejection


class ConvergenceError(HxdftError):
    """The power series did not reach its tolerance within the term cap"""


class DegeneratePathError(HxdftError):
    """Points have no spread, so no conic can be fitted"""


class SignalFormatError(HxdftError):
    """A signal or root file is malformed"""


class AgreementError(HxdftError):
    """Two transform paths disagree beyond tolerance"""
