"""Exception hierarchy shared by all modules."""


class SatoGrError(Exception):
    """Base class for every error raised by the package."""


class FieldMismatchError(SatoGrError, TypeError):
    """Arithmetic or matrix assembly mixing two different fields."""


class InvalidModulusError(SatoGrError, ValueError):
    pass


class AmbientMismatchError(SatoGrError, ValueError):
    """Subspaces living in windows of different dimension."""


class RankDeficientError(SatoGrError, ValueError):
    """A basis matrix whose rows are not linearly independent."""


class LevelMismatchError(SatoGrError, ValueError):
    pass


class ChargeError(SatoGrError, ValueError):
    """An operation needing a charge-0 Maya diagram received another one."""


class WrongComponentError(SatoGrError, ValueError):
    """A point or operator outside the index-0 component where one is required."""


class NotInChartError(SatoGrError, ValueError):
    pass


class NotDecomposableError(SatoGrError, ValueError):
    """A coordinate vector violating some quadratic Pluecker relation."""


class NotInvertibleError(SatoGrError, ValueError):
    pass


class WindowOverflowError(SatoGrError, ValueError):
    """The requested window level is too small for an operator.

    ``required`` holds the smallest level that works.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class NotAdjacentError(SatoGrError, ValueError):
    """Two points not spanning a projective line of the Grassmannian."""


class DistinctnessError(SatoGrError, ValueError):
    pass
