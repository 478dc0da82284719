"""Exception types shared across the package."""


class QSL2RError(Exception):
    """Base class for all library errors."""


class ModeMismatch(QSL2RError):
    """Operands live in different coefficient fields (or different p)."""


class ZeroInverse(QSL2RError, ZeroDivisionError):
    """Inversion of the zero scalar."""


class BadRootIndex(QSL2RError):
    """Numeric embedding requested at an index not coprime to p."""


class QFactorialZeroDivision(QSL2RError, ZeroDivisionError):
    """A q-binomial denominator vanishes and does not cancel."""


class DomainViolation(QSL2RError):
    """Index outside the documented parameter domain."""


class GenericModeUnsupported(QSL2RError):
    """Operation requires root-of-unity mode (or an explicit truncation)."""


class NonPolynomialZPart(QSL2RError):
    """Pairing is only defined against polynomial z-parts."""


class NonTrivialZPart(QSL2RError):
    """The finite-part integral rejects elements with z-dependence."""


class UnsupportedMixedTerm(QSL2RError):
    """Translation integral of z^a * exp(i a z) with a > 0 and nonzero frequency."""


class RelationCheckFailed(QSL2RError):
    """Construction-time self-test of defining relations failed."""


class FormMismatch(QSL2RError):
    """The two presentations of the universal T-matrix disagree."""


class DegenerateGram(QSL2RError):
    """Gram matrix has lower rank than the claimed signature."""


class SchemaViolation(QSL2RError):
    """JSON payload violates a serialization schema.

    ``path`` is a JSON-pointer-style location of the offending entry.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{message} (at {path or '/'})")
        self.path = path


class ExprSyntaxError(QSL2RError):
    """Expression text could not be parsed.

    Carries the byte offset and the set of token kinds that were expected.
    """

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.expected = tuple(expected)


class UndefinedAtom(ExprSyntaxError):
    """Unknown generator name in an expression."""


class NegativePowerOfNilpotent(QSL2RError):
    """Negative power requested for a non-invertible generator."""
