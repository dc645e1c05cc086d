# -*- coding: utf-8 -*-
import pytest

from algebra import builtin_algebra, residue_module
from cech import (
    ComplexPresheaf, Nerve, NervePresheaf, PointData, cech_complex, constant_presheaf, globaxten_check,
    hypercohomology, skyscraper_presheaf, vertex_les, vertex_space,
)
from cochain import CochainComplex
from errors import FunctorialityViolation, InvalidInput, ParseError
from linalg import Matrix
from strings import nonsplit_dual_numbers


def test_nerve_closure_and_validation():
    n = Nerve.from_faces(3, [(2, 0, 1)])
    assert n.faces == ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))
    assert n.max_dim == 2
    with pytest.raises(InvalidInput):
        Nerve.from_faces(2, [(0, 5)])
    with pytest.raises(ParseError):
        Nerve.from_json("torus")


def test_constant_presheaf_on_triangle_boundary(qq):
    c = cech_complex(constant_presheaf(Nerve.triangle_boundary(), qq, 1))
    assert c.cohomology_dims() == {0: 1, 1: 1}


def test_constant_presheaf_on_full_simplex(f2):
    c = cech_complex(constant_presheaf(Nerve.simplex(3), f2, 2))
    assert c.cohomology_dims() == {0: 2, 1: 0, 2: 0}


def test_discrete_cover(qq):
    assert vertex_space(constant_presheaf(Nerve.discrete(2), qq, 1), 0)[0] == 2
    assert vertex_space(constant_presheaf(Nerve.discrete(2), qq, 1), 1) == (0, ())


def test_skyscraper_sections_count_points(f2):
    disjoint = skyscraper_presheaf(Nerve.triangle_boundary(), f2, [[0], [1], [2]])
    assert cech_complex(disjoint).cohomology_dims() == {0: 3, 1: 0}
    overlapping = skyscraper_presheaf(Nerve.simplex(2), f2, [[0, 1], [1]])
    assert cech_complex(overlapping).cohomology_dims() == {0: 2, 1: 0}


def test_skyscraper_needs_every_point_covered(qq):
    with pytest.raises(InvalidInput):
        skyscraper_presheaf(Nerve.simplex(2), qq, [[0], [2]], point_count=3)


def test_functoriality_is_checked(qq):
    nerve = Nerve.simplex(3)
    one = Matrix.identity(qq, 1)
    res = {}
    for sigma in nerve.faces:
        for j in range(len(sigma)):
            tau = sigma[:j] + sigma[j + 1:]
            if tau:
                res[(tau, sigma)] = one
    res[((0, 1), (0, 1, 2))] = one.scale(2)
    with pytest.raises(FunctorialityViolation):
        NervePresheaf.build(nerve, qq, {f: 1 for f in nerve.faces}, res)


@pytest.mark.parametrize("sign", ["vertical", "horizontal"])
def test_hypercohomology_of_constant_complex(qq, sign):
    K = CochainComplex.build(qq, 0, [1, 2], [Matrix.from_rows(qq, [[1], [0]])])
    cp = ComplexPresheaf.constant(Nerve.triangle_boundary(), K)
    dc, totals = hypercohomology(cp, sign)
    dc.validate()
    # H(circle) ⊗ H(K), with H(K) = k in degree 1
    assert totals == {0: 0, 1: 1, 2: 1}


def test_unknown_sign_convention(qq):
    cp = ComplexPresheaf.constant(Nerve.point(), CochainComplex.concentrated(qq, 0, 1))
    with pytest.raises(InvalidInput):
        hypercohomology(cp, "diagonal")


def test_zero_pair_satisfies_gluing_equations(qq):
    K = CochainComplex.build(qq, 0, [1, 1], [Matrix.identity(qq, 1)])
    cp = ComplexPresheaf.constant(Nerve.simplex(2), K)
    f = [0] * cp.component(1).cochain_dim(0)
    h = [0] * cp.component(0).cochain_dim(1)
    assert globaxten_check(f, h, cp)


def test_vertex_les_is_exact(qq):
    A = builtin_algebra("dual_numbers", qq)
    u = nonsplit_dual_numbers(A)
    k = residue_module(A, 1)
    points = [PointData(u.inject, u.project, k)]
    for deg in (0, 1):
        les = vertex_les(Nerve.triangle_boundary(), [[0], [0], [0]], points, deg)
        assert les.exact
        assert les.to_json()["defects"] == []
