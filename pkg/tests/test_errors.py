# -*- coding: utf-8 -*-
import pytest

import errors
from errors import HomcatError, InvalidInput, LiftFailed, TruncationTooShort

STRUCTURAL = ("NotAComplex", "NotAChainMap", "NotAMorphism", "FunctorialityViolation", "SubspaceNotPreserved",
              "NotExact", "NotACocycle")


@pytest.mark.parametrize("name", STRUCTURAL)
def test_structural_violations_are_invalid_input(name):
    cls = getattr(errors, name)
    assert issubclass(cls, InvalidInput)
    assert issubclass(cls, ValueError)


def test_computational_limits_are_not_input_errors():
    for cls in (TruncationTooShort, LiftFailed):
        assert issubclass(cls, HomcatError)
        assert not issubclass(cls, InvalidInput)
    assert issubclass(LiftFailed, RuntimeError)


def test_to_dict_carries_code_and_details():
    err = errors.NotACocycle("no", {"cell": [0, 1]})
    assert err.to_dict() == {"code": "NOT_A_COCYCLE", "message": "no", "details": {"cell": [0, 1]}}
    assert HomcatError().message == "HOMCAT_ERROR"
