"""Exception hierarchy shared by every zetaforge module."""


class ZetaForgeError(Exception):
    """Base class for all library errors."""

    kind = "error"


class DomainError(ZetaForgeError, ValueError):
    kind = "domain"


class PoleError(DomainError):
    kind = "pole"


class NearIntegerError(DomainError):
    kind = "near-integer"


class NonConvergence(ZetaForgeError, ArithmeticError):
    kind = "non-convergence"


class PrecisionUnreachable(ZetaForgeError, ArithmeticError):
    kind = "precision-unreachable"
