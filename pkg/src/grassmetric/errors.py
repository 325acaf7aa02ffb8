"""Exception hierarchy.

Two branches matter to callers: ``InputError`` (malformed or inconsistent
arguments) and ``MathematicalFailure`` (a form that does not behave like an
n-inner product). The CLI maps them to exit codes 2 and 1.
"""

from __future__ import annotations


class GrassmetricError(Exception):
    """Base class for every error raised by this package."""


class InputError(GrassmetricError, ValueError):
    """Arguments are malformed, inconsistent or outside an operation's domain."""


class MathematicalFailure(GrassmetricError, ArithmeticError):
    """A computed quantity contradicts a property every n-inner product has."""


class NonSquare(InputError):
    pass


class TooLarge(InputError):
    pass


class NonFinite(InputError):
    pass


class RankDeficient(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class InvalidIndexTuple(InputError):
    """Index tuple is not strictly increasing."""


class DimensionMismatch(InputError):
    pass


class OrderMismatch(InputError):
    pass


class OrderExceedsDimension(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class MixedSpaces(InputError):
    """Subspaces do not share the same form, dimension and order."""


class DegenerateSubspace(InputError):
    pass


class FullSpace(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class UnsupportedForm(InputError):
    pass


class NoOrthogonalVector(GrassmetricError):
    """The homogeneous orthogonality system has only the trivial solution."""


class NegativeSquare(MathematicalFailure):
    """n_inner(A, A) is negative beyond round-off."""


class InequalityViolated(MathematicalFailure):
    pass


class IdentityViolated(MathematicalFailure):
    pass


class ParseError(InputError):
    pass


class EmptyFile(ParseError):
    pass


class RaggedRows(ParseError):
    pass


class NonNumericToken(ParseError):
    pass
