# -*- coding: utf-8 -*-
import pytest

from cech import hypercohomology
from errors import InvalidInput, VariableCountMismatch
from koszul import (
    EvalModule, SeparatedSequence, companion_matrix, d0_complex_presheaf, d0_ext_dims, d0_report, koszul_hom,
    local_points, poly_at, quotient_module,
)
from linalg import Field, Matrix


def test_companion_matrix_is_a_root(f3):
    coeffs = f3.vector([1, 0, 2, 1])
    C = companion_matrix(f3, coeffs)
    assert poly_at(f3, coeffs, C).is_zero()


def test_build_normalizes_leading_coefficient(qq):
    seq = SeparatedSequence.build(qq, [[2, 4, 0]])
    assert seq.polys == (qq.vector(["1/2", 1]),)
    assert seq.degrees() == (1,)


def test_constant_polynomial_is_rejected(qq):
    with pytest.raises(InvalidInput):
        SeparatedSequence.build(qq, [[3, 0]])


def test_variable_count_must_match(qq):
    seq = SeparatedSequence.build(qq, [[0, 1], [0, 1]])
    with pytest.raises(VariableCountMismatch):
        koszul_hom(seq, EvalModule(qq, 1, (Matrix.zeros(qq, 1, 1),)))
    with pytest.raises(VariableCountMismatch):
        SeparatedSequence.from_json({"n": 3, "polys": [[0, 1], [0, 1]]})


def test_hom_into_structure_sheaf_has_zero_differential(qq):
    seq = SeparatedSequence.build(qq, [[0, -1, 1], [0, 1]])
    hom = koszul_hom(seq, quotient_module(seq))
    assert hom.p_dims == (1, 2, 1)
    assert hom.module_dim == 2
    assert hom.zero_differential_flags() == [True, True]
    assert d0_ext_dims(seq) == [2, 4, 2]


def test_reduced_point_in_three_variables(qq):
    seq = SeparatedSequence.build(qq, [[0, 1], [0, 1], [0, 1]])
    assert d0_ext_dims(seq) == [1, 3, 3, 1]


def test_invertible_action_gives_acyclic_complex(qq):
    seq = SeparatedSequence.build(qq, [[-1, 1]])
    M = EvalModule(qq, 1, (Matrix.zeros(qq, 1, 1),))
    assert koszul_hom(seq, M).underlying.is_acyclic()


def test_local_points_split_by_factor(qq):
    seq = SeparatedSequence.build(qq, [[0, -1, 1], [0, 0, 1]])
    pts = local_points(seq)
    assert len(pts) == 2
    assert all(p.dim == 2 for p in pts)
    assert all(not p.reduced and p.rational for p in pts)


def test_irreducible_quadratic_over_f2():
    f2 = Field(2)
    pts = local_points(SeparatedSequence.build(f2, [[1, 1, 1]]))
    assert len(pts) == 1
    assert not pts[0].rational and pts[0].reduced


def test_hypercohomology_over_point_cover_matches_global_ext(qq):
    seq = SeparatedSequence.build(qq, [[0, -1, 1], [0, 1]])
    _, totals = hypercohomology(d0_complex_presheaf(seq))
    assert [totals.get(k, 0) for k in range(3)] == d0_ext_dims(seq)


def test_cover_must_reach_every_point(qq):
    seq = SeparatedSequence.build(qq, [[0, -1, 1], [0, 1]])
    with pytest.raises(InvalidInput):
        d0_complex_presheaf(seq, [[0]])


def test_report_marks_fat_points(qq):
    rep = d0_report(SeparatedSequence.build(qq, [[0, 0, 1]]))
    assert rep["fat"] is True
    assert rep["ext_dims"] == [2, 2]
    assert rep["dim_O_Z"] == 2
