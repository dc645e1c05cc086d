# -*- coding: utf-8 -*-
import pytest

from algebra import ModuleMap, builtin_algebra, free_module, module_map_to_ext0, residue_module
from cech import Nerve
from correlation import (
    CorrelationModel, LocalOperator, correlate, correlation_report, equivalencia_check, locally_free_trace,
    operator_space, volume_functional,
)
from errors import DegreeMismatch, EndpointMismatch, InvalidInput, NotFree
from linalg import Field, Matrix


def _point_model(field, rank=2):
    A = builtin_algebra("field", field)
    return CorrelationModel(Nerve.point(), (free_module(A, rank),), length=2)


def _map_operator(model, rows):
    F = model.branes[0]
    grp = model.ext(0, 0, 0)
    psi = ModuleMap(F, F, Matrix.from_rows(model.field, rows))
    return LocalOperator(0, 0, 0, 0, module_map_to_ext0(grp, psi).coordinates()).validate(model)


def test_trace_of_identity(qq):
    model = _point_model(qq)
    vol = locally_free_trace(model, 0, 0, [1])
    op = _map_operator(model, [[1, 0], [0, 1]])
    assert correlate(model, [op], vol) == qq.element(2)
    assert equivalencia_check(model, [op], vol)


def test_square_of_nilpotent_has_zero_trace(f3):
    model = _point_model(f3)
    vol = locally_free_trace(model, 0, 0, [1])
    n = _map_operator(model, [[0, 1], [0, 0]])
    assert correlate(model, [n, n], vol) == f3.zero
    rep = correlation_report(model, [n, n], vol)
    assert rep["value"] == "0"
    assert rep["routes"]["agree"] is True


def test_trace_pairing_is_nondegenerate(qq):
    model = _point_model(qq)
    vol = locally_free_trace(model, 0, 0, [1], nondegenerate=True)
    assert vol.nondegenerate
    assert len(operator_space(model, 0, 0, 0, 0)) == 4


def test_cup_with_a_loop_class(qq):
    A = builtin_algebra("field", qq)
    model = CorrelationModel(Nerve.triangle_boundary(), (free_module(A, 1),), length=2)
    vol = locally_free_trace(model, 0, 1, [1])
    (one,) = operator_space(model, 0, 0, 0, 0)
    (loop,) = operator_space(model, 0, 0, 0, 1)
    value = correlate(model, [one, loop], vol)
    assert value != qq.zero
    assert equivalencia_check(model, [one, loop], vol)
    assert equivalencia_check(model, [loop, one], vol)


def test_degree_must_match_the_functional(qq):
    A = builtin_algebra("field", qq)
    model = CorrelationModel(Nerve.triangle_boundary(), (free_module(A, 1),), length=2)
    vol = locally_free_trace(model, 0, 1, [1])
    (one,) = operator_space(model, 0, 0, 0, 0)
    with pytest.raises(DegreeMismatch):
        correlate(model, [one], vol)


def test_chain_must_close_up(qq):
    A = builtin_algebra("field", qq)
    model = CorrelationModel(Nerve.point(), (free_module(A, 1), free_module(A, 2)), length=2)
    vol = volume_functional(model, 0, 0, 0, [1])
    (op,) = operator_space(model, 0, 1, 0, 0)[:1]
    with pytest.raises(EndpointMismatch):
        correlate(model, [op], vol)


def test_trace_needs_a_free_module(dual):
    model = CorrelationModel(Nerve.point(), (residue_module(dual, 1),), length=2)
    with pytest.raises(NotFree):
        locally_free_trace(model, 0, 0, [1, 0])


def test_trace_must_be_normalized(qq):
    with pytest.raises(InvalidInput):
        locally_free_trace(_point_model(qq), 0, 0, [2])


def test_operator_json_round_trip(f2):
    model = _point_model(f2, rank=1)
    op = _map_operator(model, [[1]])
    assert LocalOperator.from_json(op.to_json(f2), f2) == op
    assert Field.from_json({"Fp": 2}) == f2
