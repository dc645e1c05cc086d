# -*- coding: utf-8 -*-
import random

import pytest

from cochain import ChainMap, CochainComplex, chain_map_space, is_quasi_isomorphism, random_chain_map, random_complex
from homcx import (
    cone_hom_commutes, cylinder_hom_commutes, hom_complex, hom_support, induced_hom_map,
    induced_hom_map_contravariant,
)
from linalg import Field, Matrix, kernel_basis


def test_hom_of_points(qq):
    P = CochainComplex.concentrated(qq, 0, 2)
    B = CochainComplex.concentrated(qq, 1, 3)
    H = hom_complex(P, B)
    assert hom_support(P, B) == (1, 1)
    assert H.underlying.dims == (6,)
    assert H.degree_index[1][:2] == ((0, 0, 0), (0, 1, 0))


def test_hom_into_acyclic_is_acyclic(qq):
    P = CochainComplex.build(qq, -1, [1, 2], [Matrix.from_rows(qq, [[1], [0]])])
    B = CochainComplex.build(qq, 0, [1, 1], [Matrix.identity(qq, 1)])
    assert hom_complex(P, B).underlying.is_acyclic()


def test_closed_degree_zero_elements_are_chain_maps(f3, rng):
    for _ in range(5):
        K = random_complex(f3, rng, lo=0, length=3, max_dim=2)
        L = random_complex(f3, rng, lo=0, length=3, max_dim=2)
        H = hom_complex(K, L).underlying
        assert kernel_basis(H.d(0)).dim == len(chain_map_space(K, L))


def test_maps_round_trip_through_vectors(qq):
    P = CochainComplex.build(qq, 0, [1, 1], [Matrix.identity(qq, 1)])
    B = CochainComplex.concentrated(qq, 0, 2)
    H = hom_complex(P, B)
    v = qq.vector([1, 2])
    assert H.from_maps(0, H.to_maps(0, v)) == v


@pytest.mark.parametrize("p", [None, 2])
def test_induced_maps_commute_with_cone_and_cylinder(p):
    rng = random.Random(7)
    fld = Field(p)
    for _ in range(4):
        P = random_complex(fld, rng, lo=-1, length=2, max_dim=2)
        K = random_complex(fld, rng, lo=0, length=2, max_dim=2)
        L = random_complex(fld, rng, lo=0, length=2, max_dim=2)
        g = random_chain_map(K, L, rng)
        induced_hom_map(P, g).validate()
        assert cone_hom_commutes(P, g)
        assert cylinder_hom_commutes(P, g)


def test_identity_induces_quasi_isomorphism(qq, rng):
    P = random_complex(qq, rng, lo=0, length=2, max_dim=2)
    K = random_complex(qq, rng, lo=0, length=3, max_dim=2)
    assert is_quasi_isomorphism(induced_hom_map(P, ChainMap.identity(K)))


def test_contravariant_map_is_a_chain_map(qq, rng):
    P = random_complex(qq, rng, lo=0, length=2, max_dim=2)
    P2 = random_complex(qq, rng, lo=0, length=2, max_dim=2)
    B = random_complex(qq, rng, lo=0, length=3, max_dim=2)
    h = random_chain_map(P, P2, rng)
    induced_hom_map_contravariant(h, B).validate()
