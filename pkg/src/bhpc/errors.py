"""Exception hierarchy.

Constructor precondition failures derive from :class:`HypothesisError` and
carry the name of the violated hypothesis, so the CLI can report it and exit
with status 2.
"""

from __future__ import annotations


class BhpcError(Exception):
    """Base class for every error raised by the package."""


# scalars

class ScalarError(BhpcError, ValueError):
    pass


class ZeroToNegativePower(ScalarError, ZeroDivisionError):
    pass


class MalformedScalar(ScalarError):
    pass


class DenominatorZero(ScalarError, ZeroDivisionError):
    pass


class NotReducibleInField(ScalarError):
    pass


class FieldError(BhpcError, ValueError):
    pass


# grading / linear algebra

class DimensionMismatch(BhpcError, ValueError):
    pass


class ZeroEntry(BhpcError, ValueError):
    pass


class UnsupportedGroupForBuiltin(BhpcError, ValueError):
    pass


class SingularMap(BhpcError, ArithmeticError):
    pass


class ValidationError(BhpcError, ValueError):
    """A construction-time invariant (evenness, commuting maps, bicharacter law) failed."""

    def __init__(self, law: str, witness=None, message: str = ""):
        self.law = law
        self.witness = witness
        text = f"{law} violated"
        if witness is not None:
            text += f" at {witness}"
        if message:
            text += f": {message}"
        super().__init__(text)


# constructor hypotheses

class HypothesisError(BhpcError, ValueError):
    hypothesis = "precondition"

    def __init__(self, message: str = "", report=None):
        self.report = report
        super().__init__(f"{type(self).__name__}: {message}" if message else type(self).__name__)


class InvalidMultiplier(HypothesisError):
    hypothesis = "sigma is a multiplier"


class NotRegular(HypothesisError):
    hypothesis = "alpha and beta are automorphisms"


class NotAssociative(HypothesisError):
    hypothesis = "BiHom-associative"


class NotPoisson(HypothesisError):
    hypothesis = "input is BiHom-Poisson color"


class NotMorphism(HypothesisError):
    hypothesis = "maps are morphisms"


class MapsDoNotCommute(HypothesisError):
    hypothesis = "structure maps pairwise commute"


class InvalidOperator(HypothesisError):
    hypothesis = "operator satisfies its defining identities"


class NotInjective(HypothesisError):
    hypothesis = "operator is injective"


class GroupMismatch(HypothesisError):
    hypothesis = "shared grading group and bicharacter"


class FieldMismatch(HypothesisError):
    hypothesis = "shared ground field"


class FactorNotCommutative(HypothesisError):
    hypothesis = "commutative BiHom-associative factor"


class NotHomMode(HypothesisError):
    hypothesis = "beta equals alpha"


class NonEmbeddableConstants(HypothesisError):
    hypothesis = "constants embed into the target field"


# catalog / io

class UnknownEntry(BhpcError, KeyError):
    pass


class GenerationExhausted(BhpcError, RuntimeError):
    pass


class NoMutableEntry(BhpcError, ValueError):
    pass


class ParseError(BhpcError, ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
