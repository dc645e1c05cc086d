# -*- coding: utf-8 -*-
import pytest

from errors import ParseError, ShapeMismatch, SubspaceNotPreserved
from linalg import (
    Field, Matrix, Subspace, enumerate_vectors, induced_on_quotient, inverse, kernel_basis, kron, rank,
    solve,
)


def test_rank_depends_on_characteristic(qq, f2):
    rows = [[1, 1], [1, 3]]
    assert rank(Matrix.from_rows(qq, rows)) == 2
    assert rank(Matrix.from_rows(f2, rows)) == 1


def test_kernel_basis_is_annihilated(qq):
    m = Matrix.from_rows(qq, [[1, 2, 3], [2, 4, 6]])
    K = kernel_basis(m)
    assert K.dim == 2
    for v in K.vectors():
        assert all(x == 0 for x in m.apply(v))


def test_kernel_of_empty_matrix(qq):
    assert kernel_basis(Matrix.zeros(qq, 0, 3)).dim == 3
    assert kernel_basis(Matrix.zeros(qq, 2, 0)).dim == 0


def test_solve_consistent_and_inconsistent(qq):
    m = Matrix.from_rows(qq, [[1, 1], [1, -1]])
    b = qq.vector([3, 1])
    x = solve(m, b)
    assert x == qq.vector([2, 1])
    assert m.apply(x) == b
    assert solve(Matrix.from_rows(qq, [[1], [1]]), qq.vector([1, 0])) is None


def test_solve_rejects_wrong_length(qq):
    with pytest.raises(ShapeMismatch):
        solve(Matrix.identity(qq, 2), qq.vector([1]))


def test_inverse_over_f3(f3):
    m = Matrix.from_rows(f3, [[1, 1], [0, 2]])
    inv = inverse(m)
    assert inv is not None
    assert m @ inv == Matrix.identity(f3, 2)
    assert inverse(Matrix.from_rows(f3, [[1, 2], [2, 1]])) is None


def test_induced_on_quotient(qq):
    e1 = Subspace.span(qq, 2, [qq.vector([1, 0])])
    m = Matrix.from_rows(qq, [[1, 1], [0, 2]])
    q = induced_on_quotient(m, e1, e1)
    assert q == Matrix.from_rows(qq, [[2]])


def test_induced_on_quotient_needs_invariant_subspace(qq):
    e1 = Subspace.span(qq, 2, [qq.vector([1, 0])])
    m = Matrix.from_rows(qq, [[0, 0], [1, 0]])
    with pytest.raises(SubspaceNotPreserved):
        induced_on_quotient(m, e1, e1)


def test_subspace_sum_and_intersection(qq):
    a = Subspace.span(qq, 3, [qq.vector([1, 0, 0]), qq.vector([0, 1, 0])])
    b = Subspace.span(qq, 3, [qq.vector([0, 1, 0]), qq.vector([0, 0, 1])])
    assert a.sum(b).dim == 3
    assert a.intersection(b) == Subspace.span(qq, 3, [qq.vector([0, 1, 0])])
    assert qq.vector([1, 1, 0]) in a


def test_kron_of_identities(f2):
    assert kron(Matrix.identity(f2, 2), Matrix.identity(f2, 3)) == Matrix.identity(f2, 6)


def test_field_parsing():
    assert Field.from_json("Q") == Field(None)
    assert Field.from_json({"Fp": 5}) == Field(5)
    with pytest.raises(ParseError):
        Field.from_json({"Fp": 4})
    f3 = Field(3)
    assert f3.to_str(f3.element("1/2")) == "2"
    with pytest.raises(ParseError):
        f3.element("1/3")
    assert Field(None).to_str(Field(None).element("-6/4")) == "-3/2"


def test_matrix_json_shape_is_checked(qq):
    with pytest.raises(ShapeMismatch):
        Matrix.from_json({"rows": 2, "cols": 2, "entries": [1, 2, 3]}, qq)
    m = Matrix.from_json({"rows": 1, "cols": 2, "entries": ["1/2", 3]}, qq)
    assert m.to_json()["entries"] == ["1/2", "3"]


def test_enumerate_vectors_counts(f3):
    assert len(list(enumerate_vectors(f3, 2))) == 9
