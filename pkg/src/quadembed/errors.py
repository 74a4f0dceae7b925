"""Exception hierarchy shared by every module."""

from __future__ import annotations


class QuadembedError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVariable(QuadembedError):
    def __init__(self, name: str, ring_vars=()):
        self.name = name
        self.ring_vars = tuple(ring_vars)
        super().__init__(f"unknown variable {name!r} (ring variables: {', '.join(self.ring_vars)})")


class PolySyntaxError(QuadembedError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")


class CoefficientError(QuadembedError):
    pass


class FieldError(QuadembedError):
    pass


class RingMismatch(QuadembedError):
    pass


class MissingImage(QuadembedError):
    pass


class BudgetExceeded(QuadembedError):
    pass


class NotWellDefined(QuadembedError):
    pass


class ParameterConstraintViolated(QuadembedError):
    def __init__(self, constraint: str, source: str):
        self.constraint = constraint
        self.source = source
        super().__init__(f"parameter constraint violated: {constraint} (required by {source})")


class NotAQuadricAmbient(QuadembedError):
    pass


class WitnessFails(QuadembedError):
    def __init__(self, identity: str, residual):
        self.identity = identity
        self.residual = residual
        super().__init__(f"witness identity {identity!r} fails, residual {residual}")


class DerivationFailed(QuadembedError):
    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message}: residual {residual}")


class IdentityFails(QuadembedError):
    def __init__(self, identity: str, residual):
        self.identity = identity
        self.residual = residual
        super().__init__(f"identity {identity!r} fails, residual {residual}")


class UnsupportedField(QuadembedError):
    pass


class WitnessInvalid(QuadembedError):
    pass


class DecompositionFailed(QuadembedError):
    def __init__(self, message: str, pair=None):
        self.pair = pair
        super().__init__(message)


class NotUnimodular(QuadembedError):
    pass


class NormalizationFails(QuadembedError):
    pass


class DegreeTooHigh(QuadembedError):
    pass
