# ---- File: utils.py ----

import json
import re
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from algebra.expressions import parse_rational
from errors import InvformError, SpecParseError

_ASSIGNMENT = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+?)\s*$")


def create_error_json(message: str, details: Any = None, code: Optional[str] = None) -> str:
    """Creates a standardized JSON string for error reports."""
    error_obj: Dict[str, Any] = {"error": message}
    if code:
        error_obj["code"] = code
    if details:
        if not isinstance(details, (str, int, bool, list, dict, type(None))):
            details = str(details)
        error_obj["details"] = details
    return json.dumps(error_obj, indent=2)


def error_json(exc: InvformError) -> str:
    return create_error_json(exc.message, exc.details, exc.code)


def parse_assignments(items: Optional[Sequence[str]], declared: Sequence[str] = ()) -> Dict[str, Fraction]:
    """'name=p/q' strings from the command line as exact values; names must be declared parameters."""
    values: Dict[str, Fraction] = {}
    for item in items or ():
        match = _ASSIGNMENT.match(item)
        if not match:
            raise SpecParseError(f"Expected name=p/q, got {item!r}", code="malformed_assignment")
        name, text = match.groups()
        if declared and name not in declared:
            raise SpecParseError(
                f"Parameter '{name}' is not declared", code="undeclared_parameter", details={"declared": list(declared)}
            )
        values[name] = parse_rational(text)
    return values
