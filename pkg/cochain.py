# -*- coding: utf-8 -*-
"""
cochain.py
==========
Bounded cochain complexes of based vector spaces (d raises degree), their
cohomology, chain maps, shifts, mapping cones and cylinders, connecting
homomorphisms and long exact sequences.

Sign conventions (fixed once, every other module depends on them):
- shift:    (C[k])^n = C^{n+k},  d_{C[k]} = (-1)^k d_C
- cone:     Con(f)^m = K^{m+1} ⊕ L^m,  d = [[-d_K, 0], [-f, d_L]]
- cylinder: Cyl(f)^m = B^m ⊕ B^{m+1} ⊕ A^m,
            d = [[d_B, -1, 0], [0, -d_B, 0], [0, -f, d_A]]
  with inclusion b ↦ (b, 0, 0) and projection (b, b', a) ↦ (b', a) onto Con(f).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from errors import LiftFailed, NotAChainMap, NotAComplex, NotACocycle, NotExact, ParseError, ShapeMismatch
from linalg import (
    Field, Matrix, Subspace, Vector, image_basis, kernel_basis, kron, rank, solve,
    unvec_col, vec_is_zero, random_combination, random_matrix,
)

LOGGER = logging.getLogger(__name__)


# ------------------------- CochainComplex -------------------------

@dataclass(frozen=True)
class CochainComplex:
    field: Field
    lo: int
    hi: int
    dims: Tuple[int, ...]
    diffs: Tuple[Matrix, ...]

    def __post_init__(self):
        if self.hi < self.lo:
            raise ShapeMismatch(f"empty support [{self.lo}, {self.hi}]")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ShapeMismatch("one dimension per degree of the support is required")
        if len(self.diffs) != self.hi - self.lo:
            raise ShapeMismatch("one differential per adjacent pair of degrees is required")
        for k, d in enumerate(self.diffs):
            if d.shape != (self.dims[k + 1], self.dims[k]):
                raise ShapeMismatch(
                    f"d^{self.lo + k} has shape {d.shape}, expected {(self.dims[k + 1], self.dims[k])}"
                )

    # -- constructors --
    @classmethod
    def build(cls, field: Field, lo: int, dims: Sequence[int],
              diffs: Sequence[Matrix], check: bool = True) -> "CochainComplex":
        c = cls(field, lo, lo + len(dims) - 1, tuple(dims), tuple(diffs))
        if check:
            c.validate()
        return c

    @classmethod
    def zero(cls, field: Field, lo: int = 0) -> "CochainComplex":
        return cls(field, lo, lo, (0,), ())

    @classmethod
    def concentrated(cls, field: Field, degree: int, dim: int) -> "CochainComplex":
        return cls(field, degree, degree, (dim,), ())

    @classmethod
    def from_support(cls, field: Field, lo: int, hi: int,
                     dim_of, diff_of, check: bool = True) -> "CochainComplex":
        """Build from callables ``dim_of(n)`` and ``diff_of(n)`` (d^n: n → n+1)."""
        dims = tuple(dim_of(n) for n in range(lo, hi + 1))
        diffs = tuple(diff_of(n) for n in range(lo, hi))
        c = cls(field, lo, hi, dims, diffs)
        if check:
            c.validate()
        return c

    # -- access --
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self.dims[n - self.lo]
        return 0

    def d(self, n: int) -> Matrix:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero_differential(self) -> bool:
        return all(d.is_zero() for d in self.diffs)

    def validate(self) -> "CochainComplex":
        for n in range(self.lo, self.hi - 1):
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                raise NotAComplex(f"d^{n + 1} ∘ d^{n} ≠ 0", {"degree": n})
        return self

    # -- cohomology --
    def cohomology(self, n: int) -> "CohomologyGroup":
        return _cohomology(self, n)

    def cohomology_dims(self) -> Dict[int, int]:
        return {n: self.cohomology(n).dim for n in self.degrees()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * self.dim(n) for n in self.degrees())

    def cohomology_euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * h for n, h in self.cohomology_dims().items())

    def is_acyclic(self) -> bool:
        return all(h == 0 for h in self.cohomology_dims().values())

    # -- serialization --
    def to_json(self) -> Dict[str, Any]:
        return {
            "field": self.field.to_json(),
            "lo": self.lo,
            "hi": self.hi,
            "dims": list(self.dims),
            "differentials": [d.to_json() for d in self.diffs],
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "CochainComplex":
        allowed = {"field", "lo", "hi", "dims", "differentials"}
        if not isinstance(obj, dict) or not {"field", "lo", "dims"} <= set(obj):
            raise ParseError("a complex needs field, lo and dims")
        if set(obj) - allowed:
            raise ParseError(f"unknown complex fields {sorted(set(obj) - allowed)}")
        f = Field.from_json(obj["field"])
        lo = int(obj["lo"])
        dims = [int(x) for x in obj["dims"]]
        hi = int(obj.get("hi", lo + len(dims) - 1))
        if hi != lo + len(dims) - 1:
            raise ShapeMismatch("hi does not agree with the number of dims")
        diffs = [Matrix.from_json(m, f) for m in obj.get("differentials", [])]
        if not diffs and len(dims) > 1:
            diffs = [Matrix.zeros(f, dims[k + 1], dims[k]) for k in range(len(dims) - 1)]
        return cls.build(f, lo, dims, diffs)


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    dim: int
    representatives: Tuple[Vector, ...]
    cycles: Subspace
    boundaries: Subspace

    def is_zero_class(self, v: Sequence[Any]) -> bool:
        return self.boundaries.contains(v)

    def coordinates(self, v: Sequence[Any]) -> Vector:
        """Coordinates of the class of the cocycle ``v`` on the representative basis."""
        if not self.cycles.contains(v):
            raise NotACocycle(f"vector is not a cocycle in degree {self.degree}")
        f = self.cycles.field
        n = self.cycles.ambient_dim
        if self.dim == 0:
            return ()
        cols = list(self.representatives) + self.boundaries.vectors()
        m = Matrix.from_columns(f, cols, n)
        x = solve(m, tuple(v))
        if x is None:
            raise LiftFailed("cocycle outside span(representatives, boundaries)")
        return x[:self.dim]

    def class_vector(self, coords: Sequence[Any]) -> Vector:
        f = self.cycles.field
        out = f.zero_vector(self.cycles.ambient_dim)
        for c, r in zip(coords, self.representatives):
            out = tuple(o + c * x for o, x in zip(out, r))
        return out


@lru_cache(maxsize=512)
def _cohomology(c: CochainComplex, n: int) -> CohomologyGroup:
    f = c.field
    cycles = kernel_basis(c.d(n)) if c.dim(n) else Subspace.zero(f, 0)
    boundaries = image_basis(c.d(n - 1)) if c.dim(n) else Subspace.zero(f, 0)
    kept: List[Vector] = []
    span = boundaries
    for z in cycles.vectors():
        if not span.contains(z):
            kept.append(z)
            span = Subspace.span(f, c.dim(n), span.vectors() + [z])
    LOGGER.debug("H^%d: dim Z=%d dim B=%d dim H=%d", n, cycles.dim, boundaries.dim, len(kept))
    return CohomologyGroup(n, len(kept), tuple(kept), cycles, boundaries)


@dataclass(frozen=True)
class CohomologyClass:
    complex: CochainComplex
    degree: int
    representative: Vector

    def __post_init__(self):
        if not vec_is_zero(self.complex.d(self.degree).apply(self.representative)):
            raise NotACocycle(f"representative is not closed in degree {self.degree}")

    def same_class(self, other: "CohomologyClass") -> bool:
        if self.degree != other.degree:
            return False
        diff = tuple(a - b for a, b in zip(self.representative, other.representative))
        return self.complex.cohomology(self.degree).is_zero_class(diff)

    def coordinates(self) -> Vector:
        return self.complex.cohomology(self.degree).coordinates(self.representative)


def cohomology(c: CochainComplex, n: int) -> Tuple[int, Tuple[Vector, ...]]:
    g = c.cohomology(n)
    return g.dim, g.representatives


# ------------------------- shifts -------------------------

def shift(c: CochainComplex, k: int) -> CochainComplex:
    sign = -1 if k % 2 else 1
    diffs = tuple(d.scale(sign) if sign < 0 else d for d in c.diffs)
    return CochainComplex(c.field, c.lo - k, c.hi - k, c.dims, diffs)


def direct_sum(field: Field, complexes: Sequence[CochainComplex]) -> CochainComplex:
    lo = min(c.lo for c in complexes)
    hi = max(c.hi for c in complexes)
    return CochainComplex.from_support(
        field, lo, hi,
        lambda n: sum(c.dim(n) for c in complexes),
        lambda n: Matrix.direct_sum(field, [c.d(n) for c in complexes]),
        check=False,
    )


# ------------------------- ChainMap -------------------------

@dataclass(frozen=True)
class ChainMap:
    src: CochainComplex
    dst: CochainComplex
    components: Dict[int, Matrix] = dc_field(default_factory=dict)

    def component(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.src.field, self.dst.dim(n), self.src.dim(n))
        return m

    def degrees(self) -> range:
        return range(min(self.src.lo, self.dst.lo), max(self.src.hi, self.dst.hi) + 1)

    def validate(self) -> "ChainMap":
        for n, m in self.components.items():
            if m.shape != (self.dst.dim(n), self.src.dim(n)):
                raise ShapeMismatch(f"component {n} has shape {m.shape}")
        for n in self.degrees():
            left = self.dst.d(n) @ self.component(n)
            right = self.component(n + 1) @ self.src.d(n)
            if left != right:
                raise NotAChainMap(f"does not commute with differentials in degree {n}", {"degree": n})
        return self

    @classmethod
    def identity(cls, c: CochainComplex) -> "ChainMap":
        return cls(c, c, {n: Matrix.identity(c.field, c.dim(n)) for n in c.degrees()})

    @classmethod
    def zero(cls, src: CochainComplex, dst: CochainComplex) -> "ChainMap":
        return cls(src, dst, {})

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        degs = range(min(other.src.lo, self.dst.lo), max(other.src.hi, self.dst.hi) + 1)
        return ChainMap(other.src, self.dst, {n: self.component(n) @ other.component(n) for n in degs})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: m.scale(c) for n, m in self.components.items()})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: self.component(n) + other.component(n) for n in self.degrees()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        if (self.src, self.dst) != (other.src, other.dst):
            return False
        return all(self.component(n) == other.component(n) for n in self.degrees())

    __hash__ = None

    def induced_on_cohomology(self, n: int) -> Matrix:
        hs = self.src.cohomology(n)
        hd = self.dst.cohomology(n)
        cols = [hd.coordinates(self.component(n).apply(r)) for r in hs.representatives]
        if not cols:
            return Matrix.zeros(self.src.field, hd.dim, 0)
        return Matrix.from_columns(self.src.field, cols, hd.dim)

    def to_json(self) -> Dict[str, Any]:
        lo = self.src.lo
        return {"lo": lo, "components": [self.component(n).to_json() for n in self.src.degrees()]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any], src: CochainComplex, dst: CochainComplex) -> "ChainMap":
        if not isinstance(obj, dict) or "components" not in obj or set(obj) - {"lo", "components"}:
            raise ParseError("a chain map is {\"lo\": n, \"components\": [...]}")
        lo = int(obj.get("lo", src.lo))
        comps = {lo + k: Matrix.from_json(m, src.field) for k, m in enumerate(obj["components"])}
        return cls(src, dst, comps).validate()


def is_quasi_isomorphism(f: ChainMap) -> bool:
    for n in f.degrees():
        m = f.induced_on_cohomology(n)
        if m.rows != m.cols or rank(m) != m.rows:
            return False
    return True


# ------------------------- cone / cylinder -------------------------

def cone(f: ChainMap) -> CochainComplex:
    K, L, fld = f.src, f.dst, f.src.field
    lo, hi = min(K.lo - 1, L.lo), max(K.hi - 1, L.hi)

    def dim_of(m: int) -> int:
        return K.dim(m + 1) + L.dim(m)

    def diff_of(m: int) -> Matrix:
        return Matrix.block(
            fld,
            [[-K.d(m + 1), None], [-f.component(m + 1), L.d(m)]],
            [K.dim(m + 2), L.dim(m + 1)],
            [K.dim(m + 1), L.dim(m)],
        )

    return CochainComplex.from_support(fld, lo, hi, dim_of, diff_of, check=False)


@dataclass(frozen=True)
class Cylinder:
    complex: CochainComplex
    inclusion: ChainMap
    projection: ChainMap
    section: ChainMap


def cylinder(f: ChainMap) -> Cylinder:
    """Cyl(f) for f: B → A, with B → Cyl(f) → Con(f) and the section A → Cyl(f)."""
    B, A, fld = f.src, f.dst, f.src.field
    lo, hi = min(B.lo - 1, A.lo), max(B.hi, A.hi)

    def dim_of(m: int) -> int:
        return B.dim(m) + B.dim(m + 1) + A.dim(m)

    def diff_of(m: int) -> Matrix:
        return Matrix.block(
            fld,
            [
                [B.d(m), -Matrix.identity(fld, B.dim(m + 1)), None],
                [None, -B.d(m + 1), None],
                [None, -f.component(m + 1), A.d(m)],
            ],
            [B.dim(m + 1), B.dim(m + 2), A.dim(m + 1)],
            [B.dim(m), B.dim(m + 1), A.dim(m)],
        )

    cyl = CochainComplex.from_support(fld, lo, hi, dim_of, diff_of, check=False)
    con = cone(f)
    inc, proj, sec = {}, {}, {}
    for m in cyl.degrees():
        b0, b1, a0 = B.dim(m), B.dim(m + 1), A.dim(m)
        inc[m] = Matrix.block(fld, [[Matrix.identity(fld, b0)], [None], [None]], [b0, b1, a0], [b0])
        proj[m] = Matrix.block(
            fld, [[None, Matrix.identity(fld, b1), None], [None, None, Matrix.identity(fld, a0)]],
            [b1, a0], [b0, b1, a0],
        )
        sec[m] = Matrix.block(fld, [[None], [None], [Matrix.identity(fld, a0)]], [b0, b1, a0], [a0])
    return Cylinder(cyl, ChainMap(B, cyl, inc), ChainMap(cyl, con, proj), ChainMap(A, cyl, sec))


# ------------------------- exactness -------------------------

def exactness_defects(dims: Sequence[int], maps: Sequence[Matrix]) -> List[int]:
    """Interior nodes where ker ≠ im; maps[j]: V_j → V_{j+1}."""
    if len(maps) != len(dims) - 1:
        raise ShapeMismatch(f"{len(dims)} nodes need {len(dims) - 1} maps, got {len(maps)}")
    for j, m in enumerate(maps):
        if m.shape != (dims[j + 1], dims[j]):
            raise ShapeMismatch(f"map {j} has shape {m.shape}, expected {(dims[j + 1], dims[j])}")
    bad = []
    for j in range(1, len(dims) - 1):
        incoming, outgoing = maps[j - 1], maps[j]
        if not (outgoing @ incoming).is_zero() or dims[j] - rank(outgoing) != rank(incoming):
            bad.append(j)
    return bad


def exactness_check(dims: Sequence[int], maps: Sequence[Matrix]) -> bool:
    return not exactness_defects(dims, maps)


# ------------------------- short exact sequences -------------------------

@dataclass(frozen=True)
class ShortExactSequence:
    """0 → B --i--> C --p--> D → 0, degreewise."""
    i: ChainMap
    p: ChainMap

    @property
    def B(self) -> CochainComplex:
        return self.i.src

    @property
    def C(self) -> CochainComplex:
        return self.i.dst

    @property
    def D(self) -> CochainComplex:
        return self.p.dst

    def degrees(self) -> range:
        lo = min(self.B.lo, self.C.lo, self.D.lo)
        hi = max(self.B.hi, self.C.hi, self.D.hi)
        return range(lo, hi + 1)

    def validate(self) -> "ShortExactSequence":
        if self.p.src != self.C:
            raise NotExact("the maps are not composable")
        self.i.validate()
        self.p.validate()
        for n in self.degrees():
            i_n, p_n = self.i.component(n), self.p.component(n)
            b, c, d = self.B.dim(n), self.C.dim(n), self.D.dim(n)
            if c != b + d or rank(i_n) != b or rank(p_n) != d or not (p_n @ i_n).is_zero():
                raise NotExact(f"not exact in degree {n}", {"degree": n})
        return self


def connecting_map(ses: ShortExactSequence, n: int) -> Matrix:
    """H^n(D) → H^{n+1}(B) by lift, differentiate, solve."""
    hD = ses.D.cohomology(n)
    hB = ses.B.cohomology(n + 1)
    cols = []
    for rep in hD.representatives:
        c = solve(ses.p.component(n), rep)
        if c is None:
            raise LiftFailed(f"p^{n} is not surjective")
        dc = ses.C.d(n).apply(c)
        b = solve(ses.i.component(n + 1), dc)
        if b is None:
            raise LiftFailed(f"d(c) does not come from B in degree {n + 1}")
        cols.append(hB.coordinates(b))
    if not cols:
        return Matrix.zeros(ses.B.field, hB.dim, 0)
    return Matrix.from_columns(ses.B.field, cols, hB.dim)


def connecting(ses: ShortExactSequence, check: bool = True) -> Dict[int, Matrix]:
    if check:
        ses.validate()
    return {n: connecting_map(ses, n) for n in ses.degrees()}


@dataclass(frozen=True)
class LongExactSequence:
    labels: Tuple[str, ...]
    dims: Tuple[int, ...]
    maps: Tuple[Matrix, ...]

    @property
    def exact(self) -> bool:
        return exactness_check(self.dims, self.maps)

    def defects(self) -> List[str]:
        return [self.labels[j] for j in exactness_defects(self.dims, self.maps)]

    def rows(self) -> List[Dict[str, Any]]:
        out = []
        for j, lab in enumerate(self.labels):
            out.append({
                "node": lab,
                "dim": self.dims[j],
                "rank_out": rank(self.maps[j]) if j < len(self.maps) else 0,
            })
        return out


def assemble_les(field: Field, nodes: Sequence[Tuple[str, int]], maps: Sequence[Matrix],
                 closed: bool = True) -> LongExactSequence:
    """Wrap nodes with a leading zero node and, when ``closed``, a trailing one.

    An open sequence stops at its last node, which is then not checked.
    """
    if not closed:
        if not nodes:
            return LongExactSequence(("0",), (0,), ())
        dims = (0,) + tuple(d for _, d in nodes)
        first = Matrix.zeros(field, dims[1], 0)
        return LongExactSequence(("0",) + tuple(l for l, _ in nodes), dims, (first,) + tuple(maps))
    labels = ("0",) + tuple(l for l, _ in nodes) + ("0",)
    dims = (0,) + tuple(d for _, d in nodes) + (0,)
    first = Matrix.zeros(field, dims[1], 0) if len(dims) > 2 else Matrix.zeros(field, 0, 0)
    last = Matrix.zeros(field, 0, dims[-2]) if len(dims) > 2 else None
    all_maps = (first,) + tuple(maps) + ((last,) if last is not None else ())
    return LongExactSequence(labels, dims, all_maps)


def long_exact_sequence(ses: ShortExactSequence) -> LongExactSequence:
    ses.validate()
    f = ses.B.field
    nodes: List[Tuple[str, int]] = []
    maps: List[Matrix] = []
    degs = list(ses.degrees())
    for n in degs:
        nodes += [(f"H^{n}(B)", ses.B.cohomology(n).dim),
                  (f"H^{n}(C)", ses.C.cohomology(n).dim),
                  (f"H^{n}(D)", ses.D.cohomology(n).dim)]
        maps += [ses.i.induced_on_cohomology(n), ses.p.induced_on_cohomology(n)]
        if n != degs[-1]:
            maps.append(connecting_map(ses, n))
    return assemble_les(f, nodes, maps)


# ------------------------- chain-map spaces and sampling -------------------------

def chain_map_space(K: CochainComplex, L: CochainComplex) -> List[ChainMap]:
    """Basis of all chain maps K → L, solved as one linear system."""
    fld = K.field
    degs = list(range(min(K.lo, L.lo), max(K.hi, L.hi) + 1))
    sizes = [L.dim(n) * K.dim(n) for n in degs]
    offsets = [sum(sizes[:k]) for k in range(len(degs))]
    total = sum(sizes)
    eq_blocks: List[Matrix] = []
    for k, n in enumerate(degs[:-1]):
        # d_L^n f^n - f^{n+1} d_K^n = 0, column-major vec
        left = kron(Matrix.identity(fld, K.dim(n)), L.d(n))
        right = kron(K.d(n).transpose(), Matrix.identity(fld, L.dim(n + 1)))
        rows = L.dim(n + 1) * K.dim(n)
        parts = []
        for j in range(len(degs)):
            if j == k:
                parts.append(left)
            elif j == k + 1:
                parts.append(-right)
            else:
                parts.append(Matrix.zeros(fld, rows, sizes[j]))
        eq_blocks.append(Matrix.hstack(fld, parts, rows=rows))
    system = Matrix.vstack(fld, eq_blocks, cols=total) if eq_blocks else Matrix.zeros(fld, 0, total)
    basis = []
    for v in kernel_basis(system).vectors() if total else []:
        comps = {
            n: unvec_col(fld, v[offsets[k]:offsets[k] + sizes[k]], L.dim(n), K.dim(n))
            for k, n in enumerate(degs)
        }
        basis.append(ChainMap(K, L, comps))
    return basis


def random_complex(field: Field, rng: random.Random, lo: int = 0, length: int = 3,
                   max_dim: int = 3) -> CochainComplex:
    """Random bounded complex; each d^n factors through C^n / im d^{n-1}."""
    dims = [rng.randint(0, max_dim) for _ in range(length)]
    diffs: List[Matrix] = []
    for k in range(length - 1):
        prev_im = image_basis(diffs[-1]) if diffs else Subspace.zero(field, dims[k])
        q = prev_im.codim
        proj = Matrix.from_columns(
            field, [prev_im.quotient_coordinates(field.unit_vector(dims[k], j)) for j in range(dims[k])], q
        ) if dims[k] else Matrix.zeros(field, q, 0)
        diffs.append(random_matrix(field, dims[k + 1], q, rng) @ proj)
    return CochainComplex.build(field, lo, dims, diffs)


def random_chain_map(K: CochainComplex, L: CochainComplex, rng: random.Random) -> ChainMap:
    basis = chain_map_space(K, L)
    if not basis:
        return ChainMap.zero(K, L)
    fld = K.field
    out = ChainMap.zero(K, L)
    for b in basis:
        out = out + b.scale(fld.random_element(rng))
    return out
