# -*- coding: utf-8 -*-
"""
errors.py
=========
Exception hierarchy of the workbench. Every error carries a stable ``code``
that the CLI reports verbatim, plus optional structured ``details``.
"""

from typing import Any, Dict, Optional


class HomcatError(Exception):
    code = "HOMCAT_ERROR"

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# ------------------------- input / shape problems -------------------------

class InvalidInput(HomcatError, ValueError):
    code = "INVALID_INPUT"

class ShapeMismatch(InvalidInput):
    code = "SHAPE_MISMATCH"

class FieldMismatch(InvalidInput):
    code = "FIELD_MISMATCH"

class VariableCountMismatch(InvalidInput):
    code = "VARIABLE_COUNT_MISMATCH"

class DegreeMismatch(InvalidInput):
    code = "DEGREE_MISMATCH"

class EndpointMismatch(InvalidInput):
    code = "ENDPOINT_MISMATCH"

class NotFree(InvalidInput):
    code = "NOT_FREE"

class UnknownSuite(InvalidInput):
    code = "UNKNOWN_SUITE"

class ParseError(InvalidInput):
    code = "PARSE_ERROR"

class SchemaError(InvalidInput):
    code = "SCHEMA_ERROR"

# ------------------------- structural violations --------------------------

class NotAComplex(InvalidInput):
    code = "NOT_A_COMPLEX"

class NotAChainMap(InvalidInput):
    code = "NOT_A_CHAIN_MAP"

class NotAMorphism(InvalidInput):
    code = "NOT_A_MORPHISM"

class FunctorialityViolation(InvalidInput):
    code = "FUNCTORIALITY_VIOLATION"

class SubspaceNotPreserved(InvalidInput):
    code = "SUBSPACE_NOT_PRESERVED"

class NotExact(InvalidInput):
    code = "NOT_EXACT"

class NotACocycle(InvalidInput):
    code = "NOT_A_COCYCLE"

# ------------------------- computational limits ---------------------------

class TruncationTooShort(HomcatError):
    code = "TRUNCATION_TOO_SHORT"

class LiftFailed(HomcatError, RuntimeError):
    code = "LIFT_FAILED"
