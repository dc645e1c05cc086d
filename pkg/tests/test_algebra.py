# -*- coding: utf-8 -*-
import pytest

from algebra import (
    AModule, FinDimAlgebra, ModuleMap, builtin_algebra, ext0_to_module_map, ext_dims, ext_group, free_module,
    free_resolution, hom_space, is_free, module_map_to_ext0, point_module, random_module, residue_module,
    yoneda_product,
)
from errors import InvalidInput, ParseError, TruncationTooShort
from linalg import Field


@pytest.mark.parametrize("name", ["field", "dual_numbers", "k[x]/(x^3)", "product_of_points:3"])
def test_builtins_are_commutative_algebras(name, qq):
    A = builtin_algebra(name, qq)
    assert A.validate() is A
    assert free_module(A, 1).validate().dim == A.dim


def test_unknown_builtin(qq):
    with pytest.raises(ParseError):
        builtin_algebra("k[x,y]", qq)


def test_noncommutative_table_is_rejected(qq):
    # e0 unit, e1·e2 = e1 but e2·e1 = 0
    consts = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 0], [0, 1, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ]
    with pytest.raises(InvalidInput):
        FinDimAlgebra.from_structure_constants(qq, consts, [1, 0, 0])


def test_residue_and_free(dual):
    k = residue_module(dual, 1)
    assert k.dim == 1
    assert not is_free(k)
    assert is_free(free_module(dual, 2))
    assert AModule.from_json({"residue": 1}, dual) == k


def test_hom_dimensions(dual):
    k = residue_module(dual, 1)
    A = free_module(dual, 1)
    assert hom_space(k, k).dim == 1
    assert hom_space(A, k).dim == 1
    assert hom_space(k, A).dim == 1
    assert hom_space(A, A).dim == 2


def test_resolution_of_residue_field(dual):
    res = free_resolution(residue_module(dual, 1), 4)
    assert res.validate() is res
    assert res.ranks == (1, 1, 1, 1, 1)
    assert free_resolution(residue_module(dual, 1), 4) is res


def test_ext_of_residue_over_dual_numbers(dual):
    k = residue_module(dual, 1)
    assert ext_dims(k, k, 3) == [1, 1, 1, 1]


def test_ext_of_free_module_vanishes(f3):
    A = builtin_algebra("k[x]/(x^3)", f3)
    assert ext_dims(free_module(A, 2), residue_module(A, 1), 2) == [2, 0, 0]


def test_ext_over_product_of_points(qq):
    A = builtin_algebra("product_of_points:2", qq)
    p0, p1 = point_module(A, 0), point_module(A, 1)
    assert ext_dims(p0, p0, 2) == [1, 0, 0]
    assert ext_dims(p0, p1, 2) == [0, 0, 0]


def test_truncation_too_short(dual):
    k = residue_module(dual, 1)
    with pytest.raises(TruncationTooShort):
        ext_group(k, k, 3, resolution=free_resolution(k, 2))


def test_yoneda_square_of_degree_one_class():
    for name, nonzero in (("dual_numbers", True), ("k[x]/(x^3)", False)):
        A = builtin_algebra(name, Field(None))
        k = residue_module(A, 1)
        e1 = ext_group(k, k, 1)
        prod = yoneda_product(e1.generator(), e1.generator())
        assert prod.degree == 2
        assert prod.is_zero() is not nonzero


def test_yoneda_with_identity_is_neutral(dual):
    k = residue_module(dual, 1)
    e0 = ext_group(k, k, 0)
    e1 = ext_group(k, k, 1)
    one = module_map_to_ext0(e0, ModuleMap.identity(k))
    a = e1.generator()
    assert yoneda_product(a, one).coordinates() == a.coordinates()


def test_degree_zero_classes_are_module_maps(dual, rng):
    M = random_module(dual, rng)
    N = random_module(dual, rng)
    group = ext_group(M, N, 0)
    assert group.dim == hom_space(M, N).dim
    for phi in hom_space(M, N).basis:
        back = ext0_to_module_map(group, module_map_to_ext0(group, phi).cocycle)
        assert back.matrix == phi.matrix


def test_ext_class_arithmetic(dual):
    k = residue_module(dual, 1)
    e1 = ext_group(k, k, 1)
    a = e1.generator()
    assert (a + a).same_class(a.scale(2))
    assert e1.zero().is_zero()
    assert e1.element([3]).coordinates() == e1.field.vector([3])
