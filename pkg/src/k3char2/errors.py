"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can report
failures uniformly.
"""

from __future__ import annotations


class K3Error(Exception):
    """Base class; ``code`` names the failure mode."""

    code = "ERROR"

    def __init__(self, message: str = "") -> None:
        super().__init__(message or self.code)


def _make(name: str, code: str) -> type[K3Error]:
    return type(name, (K3Error,), {"code": code, "__doc__": f"Raised on {code}."})


DivisionByZero = _make("DivisionByZero", "DIVISION_BY_ZERO")
FieldMismatch = _make("FieldMismatch", "FIELD_MISMATCH")
ZeroInput = _make("ZeroInput", "ZERO_INPUT")
Pole = _make("Pole", "POLE")
TooLarge = _make("TooLarge", "TOO_LARGE")
NotAdmissible = _make("NotAdmissible", "NOT_ADMISSIBLE")
BadInput = _make("BadInput", "BAD_INPUT")
NoSolution = _make("NoSolution", "NO_SOLUTION")
NotUnique = _make("NotUnique", "NOT_UNIQUE")
LineInConic = _make("LineInConic", "LINE_IN_CONIC")
NotInStratum = _make("NotInStratum", "NOT_IN_STRATUM")
BadWeight = _make("BadWeight", "BAD_WEIGHT")
DegenerateCenter = _make("DegenerateCenter", "DEGENERATE_CENTER")
MapUndefined = _make("MapUndefined", "MAP_UNDEFINED")
EndpointMismatch = _make("EndpointMismatch", "ENDPOINT_MISMATCH")
UnknownComponent = _make("UnknownComponent", "UNKNOWN_COMPONENT")
Explosion = _make("Explosion", "EXPLOSION")
