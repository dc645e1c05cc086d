# -*- coding: utf-8 -*-
"""
linalg.py
=========
Exact linear algebra over ℚ and prime fields F_p.

Everything else in the workbench reduces to the kernels in this file: rank,
kernel bases, canonical solves and induced maps between quotients. Arithmetic
is delegated to ``sympy.polys.matrices.DomainMatrix`` over ``QQ`` or
``GF(p)``; values here are immutable wrappers that keep entries as domain
elements in row-major order.

Conventions:
- vectors are tuples of domain elements (column vectors when multiplied);
- a ``Subspace`` keeps its basis in reduced row-echelon form without zero
  rows, so two subspaces are equal iff their bases are equal;
- ``solve`` returns the canonical particular solution (free variables 0).

JSON: ``{"field": "Q" | {"Fp": p}, "rows": n, "cols": m, "entries": [...]}``
with entries as strings ("a/b" for rationals).
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from errors import FieldMismatch, ParseError, ShapeMismatch, SubspaceNotPreserved

LOGGER = logging.getLogger(__name__)

Vector = Tuple[Any, ...]


# ------------------------- Fields -------------------------

@lru_cache(maxsize=None)
def _domain(p: Optional[int]):
    if p is None:
        return QQ
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class Field:
    """ℚ when ``p`` is None, otherwise the prime field F_p."""
    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool) or not isprime(self.p):
                raise ParseError(f"characteristic must be a prime, got {self.p!r}")

    @property
    def domain(self):
        return _domain(self.p)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    # -- element conversion --
    def element(self, value: Any):
        """Convert int, Fraction, "a/b" string or an existing element."""
        K = self.domain
        if isinstance(value, bool):
            raise ParseError(f"not a field element: {value!r}")
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"cannot parse field element {value!r}") from exc
        if isinstance(value, int):
            return K(value)
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            if self.p is None:
                return K(num, den)
            if den % self.p == 0:
                raise ParseError(f"{value} has no image in F_{self.p}")
            return K(num) / K(den)
        if K.of_type(value):
            return value
        try:
            return K.convert(value)
        except Exception as exc:  # sympy raises CoercionFailed
            raise ParseError(f"not an element of {self}: {value!r}") from exc

    def vector(self, values: Iterable[Any]) -> Vector:
        return tuple(self.element(v) for v in values)

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        v = [self.zero] * n
        v[i] = self.one
        return tuple(v)

    def as_int(self, e) -> int:
        """Residue in [0, p) of an F_p element."""
        return int(self.domain.to_int(e)) % self.p

    def to_str(self, e) -> str:
        if self.p is not None:
            return str(self.as_int(e))
        num, den = int(e.numerator), int(e.denominator)
        return str(num) if den == 1 else f"{num}/{den}"

    def to_fraction(self, e) -> Fraction:
        if self.p is not None:
            return Fraction(self.as_int(e))
        return Fraction(int(e.numerator), int(e.denominator))

    def elements(self) -> List[Any]:
        if self.p is None:
            raise ValueError("ℚ is infinite; enumeration needs a prime field")
        return [self.domain(i) for i in range(self.p)]

    def random_element(self, rng: random.Random, bound: int = 2):
        if self.p is None:
            return self.domain(rng.randint(-bound, bound))
        return self.domain(rng.randrange(self.p))

    def random_nonzero(self, rng: random.Random, bound: int = 2):
        while True:
            e = self.random_element(rng, bound)
            if e != self.zero:
                return e

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "Q":
            return cls(None)
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(obj["Fp"])
        raise ParseError(f"unknown field descriptor {obj!r}")


QQ_FIELD = Field(None)


def vector_to_json(field: Field, v: Sequence[Any]) -> List[str]:
    return [field.to_str(x) for x in v]


def vec_add(a: Sequence[Any], b: Sequence[Any]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Any], b: Sequence[Any]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Sequence[Any]) -> Vector:
    return tuple(c * x for x in a)


def vec_is_zero(a: Sequence[Any]) -> bool:
    return all(x == 0 for x in a)


# ------------------------- Matrix -------------------------

@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: Tuple[Any, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # -- constructors --
    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, field: Field, n: int, c) -> "Matrix":
        return cls.identity(field, n).scale(field.element(c))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged matrix rows")
        return cls(field, len(rows), ncols, tuple(field.element(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Any]], rows: int) -> "Matrix":
        if not columns:
            return cls.zeros(field, rows, 0)
        return cls.from_rows(field, list(zip(*columns)), cols=len(columns)) if rows else cls.zeros(field, 0, len(columns))

    @classmethod
    def diagonal(cls, field: Field, values: Sequence[Any]) -> "Matrix":
        n = len(values)
        vals = [field.element(v) for v in values]
        return cls(field, n, n, tuple(vals[i] if i == j else field.zero for i in range(n) for j in range(n)))

    @classmethod
    def _from_dm(cls, field: Field, dm: DomainMatrix) -> "Matrix":
        r, c = dm.shape
        return cls(field, r, c, tuple(x for row in dm.to_list() for x in row))

    def _dm(self) -> DomainMatrix:
        return DomainMatrix(self.to_lists(), (self.rows, self.cols), self.field.domain)

    # -- access --
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: Tuple[int, int]):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> List[List[Any]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(row_idx), len(col_idx),
                      tuple(self[i, j] for i in row_idx for j in col_idx))

    # -- arithmetic --
    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def matmul(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or self.cols == 0 or other.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix._from_dm(self.field, self._dm().matmul(other._dm()))

    __matmul__ = matmul

    def _same_shape(self, other: "Matrix") -> None:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols, vec_add(self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols, vec_sub(self.entries, other.entries))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c) -> "Matrix":
        c = self.field.element(c)
        return Matrix(self.field, self.rows, self.cols, vec_scale(c, self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def apply(self, v: Sequence[Any]) -> Vector:
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for a {self.shape} matrix")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            for a, x in zip(self.row(i), v):
                acc += a * x
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return vec_is_zero(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    # -- stacking --
    @staticmethod
    def hstack(field: Field, blocks: Sequence["Matrix"], rows: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, rows or 0, 0)
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ShapeMismatch("hstack needs equal row counts")
        cols = sum(b.cols for b in blocks)
        entries = []
        for i in range(r):
            for b in blocks:
                entries.extend(b.row(i))
        return Matrix(field, r, cols, tuple(entries))

    @staticmethod
    def vstack(field: Field, blocks: Sequence["Matrix"], cols: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, 0, cols or 0)
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ShapeMismatch("vstack needs equal column counts")
        return Matrix(field, sum(b.rows for b in blocks), c,
                      tuple(x for b in blocks for x in b.entries))

    @staticmethod
    def block(field: Field, grid: Sequence[Sequence[Optional["Matrix"]]],
              row_dims: Sequence[int], col_dims: Sequence[int]) -> "Matrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        rows = []
        for bi, grid_row in enumerate(grid):
            parts = []
            for bj, blk in enumerate(grid_row):
                if blk is None:
                    blk = Matrix.zeros(field, row_dims[bi], col_dims[bj])
                elif blk.shape != (row_dims[bi], col_dims[bj]):
                    raise ShapeMismatch(
                        f"block ({bi},{bj}) has shape {blk.shape}, expected {(row_dims[bi], col_dims[bj])}"
                    )
                parts.append(blk)
            rows.append(Matrix.hstack(field, parts, rows=row_dims[bi]))
        return Matrix.vstack(field, rows, cols=sum(col_dims))

    @staticmethod
    def direct_sum(field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        row_dims = [b.rows for b in blocks]
        col_dims = [b.cols for b in blocks]
        grid = [[blocks[i] if i == j else None for j in range(len(blocks))] for i in range(len(blocks))]
        return Matrix.block(field, grid, row_dims, col_dims)

    # -- serialization --
    def to_json(self) -> Dict[str, Any]:
        return {
            "field": self.field.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.field.to_str(x) for x in self.entries],
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any], field: Optional[Field] = None) -> "Matrix":
        if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
            raise ParseError(f"matrix object needs rows, cols and entries: {obj!r}")
        extra = set(obj) - {"field", "rows", "cols", "entries"}
        if extra:
            raise ParseError(f"unknown matrix fields {sorted(extra)}")
        f = Field.from_json(obj["field"]) if "field" in obj else field
        if f is None:
            raise ParseError("matrix without a field")
        if field is not None and f != field:
            raise FieldMismatch(f"matrix over {f}, expected {field}")
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{rows}x{cols} matrix with {len(entries)} entries")
        return cls(f, rows, cols, tuple(f.element(e) for e in entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.to_str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: {body})"


# ------------------------- row reduction -------------------------

def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return Matrix.zeros(m.field, m.rows, m.cols), ()
    dm, pivots = m._dm().rref()
    return Matrix._from_dm(m.field, dm), tuple(int(p) for p in pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


# ------------------------- Subspace -------------------------

@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence[Any]]) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ShapeMismatch(f"vectors must have length {ambient_dim}")
        if not vecs:
            return cls.zero(field, ambient_dim)
        red, piv = rref(Matrix(field, len(vecs), ambient_dim, tuple(x for v in vecs for x in v)))
        basis = red.submatrix(range(len(piv)), range(ambient_dim))
        return cls(field, ambient_dim, basis, piv)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.zeros(field, 0, n), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def vectors(self) -> List[Vector]:
        return [self.basis.row(i) for i in range(self.dim)]

    def complement_indices(self) -> Tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in piv)

    def reduce(self, v: Sequence[Any]) -> Vector:
        """Residual of ``v`` modulo the subspace; zero exactly on pivot positions."""
        if len(v) != self.ambient_dim:
            raise ShapeMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        out = list(v)
        for i, p in enumerate(self.pivots):
            c = out[p]
            if c != 0:
                row = self.basis.row(i)
                out = [x - c * r for x, r in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[Any]) -> bool:
        return vec_is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence[Any]) -> Optional[Vector]:
        """Coefficients on the RREF basis, or None when ``v`` is outside."""
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def quotient_coordinates(self, v: Sequence[Any]) -> Vector:
        """Coordinates of ``v`` mod the subspace on the canonical complement basis."""
        res = self.reduce(v)
        return tuple(res[j] for j in self.complement_indices())

    def quotient_lift(self, coords: Sequence[Any]) -> Vector:
        v = [self.field.zero] * self.ambient_dim
        for j, c in zip(self.complement_indices(), coords):
            v[j] = c
        return tuple(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # x·B1 = y·B2  <=>  (x, y) in ker [B1; -B2]^T
        stacked = Matrix.vstack(self.field, [self.basis, -other.basis]).transpose()
        ker = kernel_basis(stacked)
        vecs = []
        for k in ker.vectors():
            x = k[:self.dim]
            vecs.append(self.basis.transpose().apply(x))
        return Subspace.span(self.field, self.ambient_dim, vecs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.ambient_dim, self.basis) == (other.field, other.ambient_dim, other.basis)

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.basis.entries))

    def to_json(self) -> Dict[str, Any]:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}


# ------------------------- kernels, images, solves -------------------------

def kernel_basis(m: Matrix) -> Subspace:
    n = m.cols
    if n == 0:
        return Subspace.zero(m.field, 0)
    red, piv = rref(m)
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [m.field.zero] * n
        v[f] = m.field.one
        for i, p in enumerate(piv):
            v[p] = -red[i, f]
        vecs.append(tuple(v))
    return Subspace.span(m.field, n, vecs)


def image_basis(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.rows, [c for c in m.columns() if not vec_is_zero(c)])


def solve(m: Matrix, b: Sequence[Any]) -> Optional[Vector]:
    """Canonical particular solution of m·x = b, or None when inconsistent."""
    if len(b) != m.rows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {m.rows} rows")
    f = m.field
    if m.rows == 0:
        return f.zero_vector(m.cols)
    if m.cols == 0:
        return () if vec_is_zero(b) else None
    aug = Matrix.hstack(f, [m, Matrix(f, m.rows, 1, tuple(b))])
    red, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [f.zero] * m.cols
    for i, p in enumerate(piv):
        x[p] = red[i, m.cols]
    return tuple(x)


def solve_matrix(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """Column-wise canonical solve of m·X = b."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.column(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(m.field, cols, m.cols) if cols else Matrix.zeros(m.field, m.cols, 0)


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols or rank(m) != m.rows:
        return None
    return solve_matrix(m, Matrix.identity(m.field, m.rows))


def induced_on_quotient(m: Matrix, src_sub: Subspace, dst_sub: Subspace) -> Matrix:
    """Matrix of V/src_sub → W/dst_sub on the canonical complement bases."""
    if src_sub.ambient_dim != m.cols or dst_sub.ambient_dim != m.rows:
        raise ShapeMismatch("subspaces do not match the matrix shape")
    for v in src_sub.vectors():
        if not dst_sub.contains(m.apply(v)):
            raise SubspaceNotPreserved("the map does not carry the source subspace into the target one")
    cols = [dst_sub.quotient_coordinates(m.column(j)) for j in src_sub.complement_indices()]
    return Matrix.from_columns(m.field, cols, dst_sub.codim) if cols else Matrix.zeros(m.field, dst_sub.codim, 0)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, first factor most significant."""
    a._check_field(b)
    r, c = a.rows * b.rows, a.cols * b.cols
    entries = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a[i, j]
                for l in range(b.cols):
                    entries.append(aij * b[k, l])
    return Matrix(a.field, r, c, tuple(entries))


# ------------------------- enumeration / sampling -------------------------

def enumerate_vectors(field: Field, n: int) -> Iterator[Vector]:
    """All vectors of F_p^n (prime fields only)."""
    return (tuple(v) for v in itertools.product(field.elements(), repeat=n))


def enumerate_matrices(field: Field, rows: int, cols: int) -> Iterator[Matrix]:
    for entries in itertools.product(field.elements(), repeat=rows * cols):
        yield Matrix(field, rows, cols, tuple(entries))


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random,
                  density: float = 0.6, bound: int = 2) -> Matrix:
    entries = tuple(
        field.random_element(rng, bound) if rng.random() < density else field.zero
        for _ in range(rows * cols)
    )
    return Matrix(field, rows, cols, entries)


# ------------------------- vectorization -------------------------

def vec_col(m: Matrix) -> Vector:
    """Column-major vectorization: entry (i, j) sits at j*rows + i."""
    return tuple(m[i, j] for j in range(m.cols) for i in range(m.rows))


def unvec_col(field: Field, v: Sequence[Any], rows: int, cols: int) -> Matrix:
    if len(v) != rows * cols:
        raise ShapeMismatch(f"cannot reshape {len(v)} entries into {rows}x{cols}")
    return Matrix(field, rows, cols, tuple(v[j * rows + i] for i in range(rows) for j in range(cols)))


def random_combination(field: Field, vectors: Sequence[Sequence[Any]], n: int,
                       rng: random.Random, bound: int = 2) -> Vector:
    out = field.zero_vector(n)
    for v in vectors:
        out = vec_add(out, vec_scale(field.random_element(rng, bound), v))
    return out
