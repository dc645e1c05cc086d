# -*- coding: utf-8 -*-
import random

import pytest

from cochain import CochainComplex
from errors import NotAComplex, NotACocycle
from linalg import Field, Matrix
from spectral import (
    DoubleComplex, abutment_check, class_map, conjugate, e_infinity, pages, random_double_complex, single_row,
    spectral_report, staircase,
)


def test_staircase_kills_its_ends_on_the_second_page(qq):
    dc = staircase(qq, 0, 1, 2)
    e2 = pages(dc, 2)[0]
    assert e2.dim(0, 1) == 1 and e2.dim(2, 0) == 1
    assert e2.arrows() == [{"from": [0, 1], "to": [2, 0], "rank": 1}]
    assert all(d == 0 for d in e_infinity(dc).values())
    assert dc.total().is_acyclic()


def test_class_dies_on_the_page_of_its_differential(qq):
    lift = class_map(staircase(qq, 0, 1, 2), 0, 1, [1])
    assert lift.status == "dies"
    assert lift.page == 2
    assert not lift.survives


def test_longer_staircase_dies_later(qq):
    lift = class_map(staircase(qq, 0, 2, 3), 0, 2, [1])
    assert (lift.status, lift.page) == ("dies", 3)


def test_surviving_class_lifts_to_total_cocycle(qq):
    dc = staircase(qq, 1, 1, 0)
    lift = class_map(dc, 1, 1, [1])
    assert lift.survives
    assert not dc.total().cohomology(2).is_zero_class(lift.total_cocycle)
    assert lift.to_json(qq) == {"p": 1, "q": 1, "status": "survives", "alpha": ["1"]}


def test_zero_class_survives_and_hit_class_dies(qq):
    dc = staircase(qq, 0, 1, 2)
    zero = class_map(dc, 0, 1, [0])
    assert zero.survives and zero.page is None
    assert all(x == qq.zero for x in zero.total_cocycle)
    hit = class_map(dc, 2, 0, [1])
    assert (hit.status, hit.page) == ("dies", 2)


def test_noncocycle_is_rejected(qq):
    with pytest.raises(NotACocycle):
        class_map(staircase(qq, 0, 1, 2), 1, 0, [1])


def test_commuting_square_is_not_a_double_complex(qq):
    one = Matrix.identity(qq, 1)
    dims = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    with pytest.raises(NotAComplex):
        DoubleComplex.build(qq, dims, {(0, 0): one, (0, 1): one}, {(0, 0): one, (1, 0): one})


def test_single_row_converges_to_row_cohomology(qq):
    row = CochainComplex.build(qq, 0, [1, 2, 1], [Matrix.from_rows(qq, [[1], [0]]), Matrix.from_rows(qq, [[0, 1]])])
    dc = single_row(qq, 0, row)
    assert e_infinity(dc) == {(0, 0): 0, (1, 0): 0, (2, 0): 0}


@pytest.mark.parametrize("p", [None, 2, 3])
def test_random_double_complexes_abut_to_total_cohomology(p):
    rng = random.Random(11)
    fld = Field(p)
    for _ in range(6):
        assert abutment_check(random_double_complex(fld, rng))


def test_change_of_basis_keeps_the_pages(f3, rng):
    dc = staircase(f3, 0, 2, 3)
    assert e_infinity(conjugate(dc, rng)) == e_infinity(dc)
    assert pages(conjugate(dc, rng), 3)[0].dims() == pages(dc, 3)[0].dims()


def test_report_renders_grids(qq):
    rep = spectral_report(staircase(qq, 0, 1, 2))
    assert rep["abutment"] is True
    assert rep["total_dims"] == {"0": 0, "1": 0, "2": 0, "3": 0}
    assert "E_2" in rep["text"] and "E_inf" in rep["text"]
