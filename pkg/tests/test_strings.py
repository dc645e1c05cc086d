# -*- coding: utf-8 -*-
import pytest

from algebra import ModuleMap, builtin_algebra, ext_group, free_module, module_map_to_ext0, residue_module, yoneda_product
from errors import InvalidInput
from linalg import Field
from strings import (
    CONTRAVARIANT, COVARIANT, Extension1, baer_sum, ext_class_of, extension_from_cocycle, is_equivalent, is_split,
    les_report, nonsplit_dual_numbers, obstruction_extend, obstruction_lift, pullback_ext, pushout_ext,
    split_extension, yoneda_splice,
)


@pytest.fixture
def k(dual):
    return residue_module(dual, 1)


@pytest.fixture
def nonsplit(dual):
    return nonsplit_dual_numbers(dual)


def test_split_and_nonsplit(k, nonsplit):
    assert not is_split(nonsplit)
    assert not ext_class_of(nonsplit).is_zero()
    trivial = split_extension(k, k)
    assert is_split(trivial)
    assert ext_class_of(trivial).is_zero()


def test_submodule_form_parses(dual, nonsplit):
    e = Extension1.from_json({"module": {"free": 1}, "sub": [[0, 1]]}, dual)
    assert is_equivalent(e, nonsplit)


def test_baer_sum_adds_classes(k, nonsplit):
    cls = ext_class_of(nonsplit)
    doubled = ext_class_of(baer_sum(nonsplit, nonsplit))
    assert doubled.same_class(cls + cls)
    assert is_equivalent(baer_sum(nonsplit, split_extension(k, k)), nonsplit)


def test_baer_sum_needs_matching_ends(dual, nonsplit):
    other = split_extension(residue_module(dual, 1), free_module(dual, 1))
    with pytest.raises(InvalidInput):
        baer_sum(nonsplit, other)


def test_pullback_and_pushout(k, nonsplit):
    ident, zero = ModuleMap.identity(k), ModuleMap.zero(k, k)
    assert is_equivalent(pullback_ext(nonsplit, ident), nonsplit)
    assert is_split(pushout_ext(nonsplit, zero))
    assert is_split(pullback_ext(nonsplit, zero))
    both = pushout_ext(pullback_ext(nonsplit, ident), ident)
    assert is_equivalent(both, pullback_ext(pushout_ext(nonsplit, ident), ident))


@pytest.mark.parametrize("degree", [1, 2])
def test_extension_from_cocycle_round_trip(k, degree):
    group = ext_group(k, k, degree)
    e = extension_from_cocycle(group, group.basis[0])
    assert e.degree == degree
    assert ext_class_of(e).coordinates() == group.coordinates(group.basis[0])


def test_splice_represents_yoneda_product():
    f2 = Field(2)
    A = builtin_algebra("dual_numbers", f2)
    k = residue_module(A, 1)
    group = ext_group(k, k, 1)
    first = extension_from_cocycle(group, group.basis[0])
    product = yoneda_product(group.generator(), group.generator())
    spliced = ext_class_of(yoneda_splice(first, first), resolution=product.group.resolution)
    assert spliced.coordinates() == product.coordinates()
    assert not product.is_zero()


def test_splice_needs_matching_ends(dual, nonsplit):
    other = split_extension(residue_module(dual, 1), free_module(dual, 1)).as_splice()
    with pytest.raises(InvalidInput):
        yoneda_splice(nonsplit.as_splice(), other)


def test_identity_does_not_extend_along_nonsplit_inclusion(k, nonsplit):
    rho = module_map_to_ext0(ext_group(k, k, 0), ModuleMap.identity(k))
    obs = obstruction_extend(rho, nonsplit)
    assert obs.value.degree == 1
    assert not obs.vanishes
    assert obs.to_json()["vanishes"] is False


def test_identity_extends_along_split_inclusion(k):
    rho = module_map_to_ext0(ext_group(k, k, 0), ModuleMap.identity(k))
    obs = obstruction_extend(rho, split_extension(k, k))
    assert obs.vanishes
    assert "module_map" in obs.to_json()["witness"]


def test_identity_lifts_only_through_split_projection(k, nonsplit):
    tau = module_map_to_ext0(ext_group(k, k, 0), ModuleMap.identity(k))
    assert not obstruction_lift(tau, nonsplit).vanishes
    assert obstruction_lift(tau, split_extension(k, k)).vanishes


def test_degree_one_obstruction_of_split_sequence_vanishes(k):
    tau = ext_group(k, k, 1).generator()
    obs = obstruction_lift(tau, split_extension(k, k))
    assert obs.vanishes
    assert obs.value.degree == 2


@pytest.mark.parametrize("side", [COVARIANT, CONTRAVARIANT])
def test_long_exact_sequences_are_exact(k, nonsplit, side):
    rep = les_report(nonsplit, k, side, 4).to_json()
    assert rep["exact"] is True
    assert rep["defects"] == []
    assert rep["side"] == side
    assert len(rep["connecting_ranks"]) == 3


def test_free_source_has_no_higher_ext(dual, nonsplit):
    rep = les_report(nonsplit, free_module(dual, 1), COVARIANT, 3)
    assert rep.free_check is True


def test_unknown_side(k, nonsplit):
    with pytest.raises(InvalidInput):
        les_report(nonsplit, k, "sideways")
