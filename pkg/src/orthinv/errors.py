"""Exception hierarchy shared by every orthinv module."""


class OrthinvError(Exception):
    """Base class for all errors raised by orthinv."""


# fields
class NotPrime(OrthinvError, ValueError):
    pass


class ZeroInverse(OrthinvError, ZeroDivisionError):
    pass


class FieldMismatch(OrthinvError, ValueError):
    pass


class ReducibleModulus(OrthinvError, ValueError):
    pass


# polyring
class ZeroPolynomial(OrthinvError, ValueError):
    pass


class SingularMatrix(OrthinvError, ValueError):
    pass


class PolySyntaxError(OrthinvError, ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offending column."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class UnknownVariable(PolySyntaxError):
    pass


# matgroups
class SingularGenerator(OrthinvError, ValueError):
    pass


class ClosureBudgetExceeded(OrthinvError, RuntimeError):
    pass


class NoGeneratorFound(OrthinvError, RuntimeError):
    pass


class PrimeTooLarge(OrthinvError, ValueError):
    pass


class NotASubgroup(OrthinvError, ValueError):
    pass


# invariant core
class ModularOrder(OrthinvError, ValueError):
    pass


class ModularIndex(OrthinvError, ValueError):
    pass


class NotHInvariant(OrthinvError, ValueError):
    pass


class BadDenominator(OrthinvError, ValueError):
    pass


class NegativeCoefficient(OrthinvError, ValueError):
    pass


class NotInvariantGenerator(OrthinvError, ValueError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"generator {label!r} is not invariant under the group")


# catalog / zerocheck
class RelationFailed(OrthinvError, AssertionError):
    pass


class PrimeTooLargeForExact(OrthinvError, ValueError):
    pass
