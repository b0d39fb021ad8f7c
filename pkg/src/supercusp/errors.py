"""Exception types shared across the engine.

Every contract violation gets its own class so callers (and the CLI exit-code
logic) can distinguish "wrong input" from "not enough input" from "bug".
"""

from __future__ import annotations


class SupercuspError(Exception):
    """Base class for all engine errors."""


class InvalidPlace(SupercuspError):
    """Place data inconsistent with the field it claims to describe."""


class UnsupportedPrime(SupercuspError):
    """Operation not defined at this residue characteristic."""


class Unsupported(SupercuspError):
    """Input is outside the exactly-computable range of the engine."""


class NotCoprime(SupercuspError):
    """Character evaluated at an argument sharing a factor with the modulus."""


class NotQuadratic(SupercuspError):
    """Claimed quadratic extension is split (discriminant a local square)."""


class WrongCase(SupercuspError):
    """Operation invoked outside the case split it belongs to."""


class NoSolution(SupercuspError):
    """Congruence constraints are unsatisfiable, no prime can qualify."""


class SearchExhausted(SupercuspError):
    """Sieve ran out of candidates below the stated bound."""

    def __init__(self, bound: int, message: str = ""):
        self.bound = bound
        super().__init__(message or f"no qualifying prime found below {bound}")


class InsufficientData(SupercuspError):
    """A required coefficient is outside the stored range."""


class FieldMismatch(SupercuspError):
    """Value expected to lie in the twist-invariant field does not."""


class ZeroCoefficient(SupercuspError):
    """Valuation of zero requested where a finite slope is required."""


class ConsistencyViolation(SupercuspError):
    """Descriptor contradicts the conductor bookkeeping.

    Carries both sides of the failed equation for error reporting.
    """

    def __init__(self, expected, actual, message: str = ""):
        self.expected = expected
        self.actual = actual
        super().__init__(message or f"expected {expected}, got {actual}")


class InternalInconsistency(SupercuspError):
    """Two independent evaluation routes disagreed; indicates a bug or bad input."""


class ParseError(SupercuspError):
    """Fixture file violates the schema; message carries the field path."""

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


class CMNotSupported(SupercuspError):
    """CM forms are outside the engine's scope."""


class FetchError(SupercuspError):
    """HTTP failure after retries."""


class SchemaError(SupercuspError):
    """Remote payload does not parse into the fixture schema."""


class NotFound(SupercuspError):
    """No such label upstream."""


class CacheMiss(SupercuspError):
    """Requested label is not in the local cache."""


class WriteError(SupercuspError):
    """Fixture or cache file could not be written."""
