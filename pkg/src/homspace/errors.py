"""Exception hierarchy shared by every module."""


class HomspaceError(Exception):
    pass


class ShapeError(HomspaceError, ValueError):
    pass


class SingularError(HomspaceError, ValueError):
    pass


class DomainError(HomspaceError, ValueError):
    pass


class JacobiError(HomspaceError, ValueError):
    pass


class InvarianceError(HomspaceError, ValueError):
    pass


class SignatureError(HomspaceError, ValueError):
    pass


class DegenerateIsotropyError(HomspaceError, ValueError):
    pass


class AlgebraTypeError(HomspaceError, TypeError):
    pass


class NotHeisenbergError(HomspaceError, ValueError):
    pass


class NotTwistedHeisenbergError(HomspaceError, ValueError):
    pass


class InconsistencyError(HomspaceError, AssertionError):
    """Two independent computations of the same quantity disagreed."""
