# -*- coding: utf-8 -*-
import pytest

from cochain import (
    ChainMap, CochainComplex, ShortExactSequence, cohomology, cone, connecting, cylinder, exactness_check,
    is_quasi_isomorphism, long_exact_sequence, random_chain_map, random_complex, shift,
)
from errors import NotAChainMap, NotAComplex
from linalg import Field, Matrix, rank


def _two_term(field, d):
    return CochainComplex.build(field, 0, [1, 1], [Matrix.from_rows(field, [[d]])])


def test_acyclic_two_term_complex(qq):
    c = _two_term(qq, 1)
    assert cohomology(c, 0) == (0, ())
    assert cohomology(c, 1)[0] == 0
    assert c.is_acyclic()


def test_zero_differential_keeps_everything(qq):
    c = _two_term(qq, 0)
    assert c.cohomology_dims() == {0: 1, 1: 1}
    dim, reps = cohomology(c, 1)
    assert dim == 1 and len(reps) == 1


def test_d_squared_is_checked(qq):
    one = Matrix.identity(qq, 1)
    with pytest.raises(NotAComplex):
        CochainComplex.build(qq, 0, [1, 1, 1], [one, one])


def test_shift_moves_degrees_and_negates(qq):
    c = _two_term(qq, 1)
    s = shift(c, 1)
    assert (s.lo, s.hi) == (-1, 0)
    assert s.d(-1) == Matrix.from_rows(qq, [[-1]])
    assert shift(c, 2).d(-2) == c.d(0)


def test_cone_of_identity_is_acyclic(f3):
    K = CochainComplex.concentrated(f3, 0, 2)
    assert cone(ChainMap.identity(K)).is_acyclic()
    assert is_quasi_isomorphism(ChainMap.identity(K))


def test_cone_of_zero_map(qq):
    K = CochainComplex.concentrated(qq, 0, 1)
    C = cone(ChainMap.zero(K, K))
    assert C.cohomology_dims() == {-1: 1, 0: 1}
    assert not is_quasi_isomorphism(ChainMap.zero(K, K))


def test_cylinder_section_is_quasi_isomorphism(qq, rng):
    K = random_complex(qq, rng, lo=0, length=2, max_dim=2)
    L = random_complex(qq, rng, lo=0, length=2, max_dim=2)
    f = random_chain_map(K, L, rng)
    cyl = cylinder(f)
    cyl.complex.validate()
    assert is_quasi_isomorphism(cyl.section)
    cyl.inclusion.validate()
    cyl.projection.validate()


def test_chain_map_must_commute(qq):
    K = _two_term(qq, 1)
    L = _two_term(qq, 0)
    with pytest.raises(NotAChainMap):
        ChainMap.from_json({"lo": 0, "components": [{"rows": 1, "cols": 1, "entries": [1]},
                                                    {"rows": 1, "cols": 1, "entries": [0]}]}, L, K)


def _ses(qq):
    B = CochainComplex.concentrated(qq, 1, 1)
    C = _two_term(qq, 1)
    D = CochainComplex.concentrated(qq, 0, 1)
    one = Matrix.identity(qq, 1)
    return ShortExactSequence(ChainMap(B, C, {1: one}), ChainMap(C, D, {0: one}))


def test_connecting_map_is_an_isomorphism(qq):
    deltas = connecting(_ses(qq))
    assert deltas[0].shape == (1, 1)
    assert rank(deltas[0]) == 1
    assert deltas[1].shape == (0, 0)


def test_long_exact_sequence_is_exact(qq):
    les = long_exact_sequence(_ses(qq))
    assert les.exact
    assert les.defects() == []
    assert les.labels[0] == "0" and les.labels[-1] == "0"


def test_exactness_check_detects_defect(qq):
    zero = Matrix.zeros(qq, 1, 1)
    assert exactness_check([0, 1, 1, 0], [Matrix.zeros(qq, 1, 0), Matrix.identity(qq, 1), Matrix.zeros(qq, 0, 1)])
    assert not exactness_check([0, 1, 1, 0], [Matrix.zeros(qq, 1, 0), zero, Matrix.zeros(qq, 0, 1)])


@pytest.mark.parametrize("p", [None, 2, 3])
def test_random_complexes_agree_on_euler_characteristic(p, rng):
    fld = Field(p)
    for _ in range(10):
        c = random_complex(fld, rng, lo=rng.randint(-2, 2), length=3, max_dim=3)
        assert c.euler_characteristic() == c.cohomology_euler_characteristic()


def test_json_round_trip(f2):
    c = _two_term(f2, 1)
    assert CochainComplex.from_json(c.to_json()) == c
