# ---- File: errors.py ----

from typing import Any, Optional


class InvformError(Exception):
    """Base error carrying a stable error code and JSON-friendly details."""

    code: str = "invform_error"

    def __init__(self, message: str, code: Optional[str] = None, details: Any = None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code
        self.details = details


class StructuralError(InvformError):
    """Dimension, degree or parameter-set mismatch between operands."""

    code = "structural"


class UnsupportedError(InvformError):
    """Input outside what an exact routine can decide (e.g. multivariate root isolation)."""

    code = "unsupported"


class ExactDivisionError(InvformError):
    """Raised by exact polynomial division when a remainder is left over."""

    code = "inexact_division"


class SpecParseError(InvformError):
    """Malformed spec or table file; details carry the field path or line."""

    code = "malformed_spec"


class ValidationFailure(InvformError):
    """A mathematical precondition failed; details carry the witness."""

    code = "validation_failed"
