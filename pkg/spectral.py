# -*- coding: utf-8 -*-
"""
spectral.py
===========
Spectral sequence of a bounded double complex for the filtration by the
first index p (columns).

For a cell (p, q) of total degree k = p + q:

    Z_r^{p,q} = leading parts at p of {x ∈ F^p Tot^k : Dx ∈ F^{p+r} Tot^{k+1}}
    B_r^{p,q} = leading parts at p of {Dy : y ∈ F^{p-r+1} Tot^{k-1}, Dy ∈ F^p}
    E_r^{p,q} = Z_r / B_r

so E_0 = C, E_1 = H(d_v) and E_2 = H_h(H_v). d_r sends [z] to the leading
part at p+r of Dx for any x ∈ F^p with leading part z and Dx ∈ F^{p+r}.
Pages stabilize by r_max = width + height + 1 of the support rectangle.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cochain import CochainComplex, CohomologyGroup
from errors import NotAComplex, NotACocycle, ParseError, ShapeMismatch
from linalg import (
    Field, Matrix, Subspace, Vector, inverse, kernel_basis, random_matrix, rank, solve, vec_is_zero,
)

LOGGER = logging.getLogger(__name__)

Cell = Tuple[int, int]


# ------------------------- DoubleComplex -------------------------

@dataclass(frozen=True)
class DoubleComplex:
    """Anticommuting bigraded complex; d_h: (p,q)→(p+1,q), d_v: (p,q)→(p,q+1)."""
    field: Field
    p_lo: int
    p_hi: int
    q_lo: int
    q_hi: int
    dims: Tuple[Tuple[int, ...], ...]
    dh: Tuple[Tuple[Optional[Matrix], ...], ...]
    dv: Tuple[Tuple[Optional[Matrix], ...], ...]

    @classmethod
    def build(cls, field: Field, dims: Dict[Cell, int], dh: Optional[Dict[Cell, Matrix]] = None,
              dv: Optional[Dict[Cell, Matrix]] = None, check: bool = True) -> "DoubleComplex":
        dh, dv = dict(dh or {}), dict(dv or {})
        cells = list(dims) or [(0, 0)]
        p_lo, p_hi = min(p for p, _ in cells), max(p for p, _ in cells)
        q_lo, q_hi = min(q for _, q in cells), max(q for _, q in cells)
        grid_d = tuple(tuple(dims.get((p, q), 0) for q in range(q_lo, q_hi + 1)) for p in range(p_lo, p_hi + 1))
        grid_h = tuple(tuple(dh.get((p, q)) for q in range(q_lo, q_hi + 1)) for p in range(p_lo, p_hi + 1))
        grid_v = tuple(tuple(dv.get((p, q)) for q in range(q_lo, q_hi + 1)) for p in range(p_lo, p_hi + 1))
        dc = cls(field, p_lo, p_hi, q_lo, q_hi, grid_d, grid_h, grid_v)
        for (p, q), m in list(dh.items()) + list(dv.items()):
            if not (p_lo <= p <= p_hi and q_lo <= q <= q_hi):
                raise ShapeMismatch(f"differential out of the support at {(p, q)}")
        for (p, q), m in dh.items():
            if m.shape != (dc.dim(p + 1, q), dc.dim(p, q)):
                raise ShapeMismatch(f"d_h at {(p, q)} has shape {m.shape}")
        for (p, q), m in dv.items():
            if m.shape != (dc.dim(p, q + 1), dc.dim(p, q)):
                raise ShapeMismatch(f"d_v at {(p, q)} has shape {m.shape}")
        if check:
            dc.validate()
        return dc

    # -- access --
    def cells(self) -> List[Cell]:
        return [(p, q) for p in range(self.p_lo, self.p_hi + 1) for q in range(self.q_lo, self.q_hi + 1)]

    def dim(self, p: int, q: int) -> int:
        if self.p_lo <= p <= self.p_hi and self.q_lo <= q <= self.q_hi:
            return self.dims[p - self.p_lo][q - self.q_lo]
        return 0

    def h(self, p: int, q: int) -> Matrix:
        m = None
        if self.p_lo <= p <= self.p_hi and self.q_lo <= q <= self.q_hi:
            m = self.dh[p - self.p_lo][q - self.q_lo]
        return m if m is not None else Matrix.zeros(self.field, self.dim(p + 1, q), self.dim(p, q))

    def v(self, p: int, q: int) -> Matrix:
        m = None
        if self.p_lo <= p <= self.p_hi and self.q_lo <= q <= self.q_hi:
            m = self.dv[p - self.p_lo][q - self.q_lo]
        return m if m is not None else Matrix.zeros(self.field, self.dim(p, q + 1), self.dim(p, q))

    @property
    def width(self) -> int:
        return self.p_hi - self.p_lo + 1

    @property
    def height(self) -> int:
        return self.q_hi - self.q_lo + 1

    @property
    def r_max(self) -> int:
        return self.width + self.height + 1

    def validate(self) -> "DoubleComplex":
        for p, q in self.cells():
            if not (self.h(p + 1, q) @ self.h(p, q)).is_zero():
                raise NotAComplex(f"d_h² ≠ 0 at {(p, q)}", {"cell": [p, q]})
            if not (self.v(p, q + 1) @ self.v(p, q)).is_zero():
                raise NotAComplex(f"d_v² ≠ 0 at {(p, q)}", {"cell": [p, q]})
            if not (self.v(p + 1, q) @ self.h(p, q) + self.h(p, q + 1) @ self.v(p, q)).is_zero():
                raise NotAComplex(f"d_h and d_v do not anticommute at {(p, q)}", {"cell": [p, q]})
        return self

    # -- total complex --
    def total_degrees(self) -> range:
        return range(self.p_lo + self.q_lo, self.p_hi + self.q_hi + 1)

    def columns_of(self, k: int) -> List[int]:
        return [p for p in range(self.p_lo, self.p_hi + 1) if self.q_lo <= k - p <= self.q_hi]

    def offsets(self, k: int) -> Dict[int, int]:
        out, pos = {}, 0
        for p in self.columns_of(k):
            out[p] = pos
            pos += self.dim(p, k - p)
        return out

    def total_dim(self, k: int) -> int:
        return sum(self.dim(p, k - p) for p in self.columns_of(k))

    def total_differential(self, k: int) -> Matrix:
        src, dst = self.columns_of(k), self.columns_of(k + 1)
        grid: List[List[Optional[Matrix]]] = [[None] * len(src) for _ in dst]
        for j, p in enumerate(src):
            q = k - p
            for i, p2 in enumerate(dst):
                if p2 == p:
                    grid[i][j] = self.v(p, q)
                elif p2 == p + 1:
                    grid[i][j] = self.h(p, q)
        return Matrix.block(self.field, grid, [self.dim(p, k + 1 - p) for p in dst],
                            [self.dim(p, k - p) for p in src])

    def total(self) -> CochainComplex:
        degs = list(self.total_degrees())
        return CochainComplex.build(self.field, degs[0], [self.total_dim(k) for k in degs],
                                    [self.total_differential(k) for k in degs[:-1]], check=False)

    def embed(self, p: int, q: int, x: Sequence[Any]) -> Vector:
        """Vector of C^{p,q} as an element of Tot^{p+q}."""
        k = p + q
        out = [self.field.zero] * self.total_dim(k)
        off = self.offsets(k)[p]
        out[off:off + len(x)] = list(x)
        return tuple(out)

    def component(self, p: int, k: int, x: Sequence[Any]) -> Vector:
        off = self.offsets(k).get(p)
        if off is None:
            return ()
        return tuple(x[off:off + self.dim(p, k - p)])

    # -- serialization --
    def to_json(self) -> Dict[str, Any]:
        cells = []
        for p, q in self.cells():
            if self.dim(p, q) == 0:
                continue
            entry: Dict[str, Any] = {"p": p, "q": q, "dim": self.dim(p, q)}
            if self.dim(p + 1, q) and not self.h(p, q).is_zero():
                entry["dh"] = self.h(p, q).to_json()
            if self.dim(p, q + 1) and not self.v(p, q).is_zero():
                entry["dv"] = self.v(p, q).to_json()
            cells.append(entry)
        return {"field": self.field.to_json(), "cells": cells}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "DoubleComplex":
        if not isinstance(obj, dict) or "cells" not in obj or set(obj) - {"field", "cells"}:
            raise ParseError("a double complex is {\"field\": …, \"cells\": [...]}")
        f = Field.from_json(obj.get("field", "Q"))
        dims, dh, dv = {}, {}, {}
        for c in obj["cells"]:
            if set(c) - {"p", "q", "dim", "dh", "dv"}:
                raise ParseError(f"unknown cell fields {sorted(set(c) - {'p', 'q', 'dim', 'dh', 'dv'})}")
            cell = (int(c["p"]), int(c["q"]))
            dims[cell] = int(c["dim"])
            if "dh" in c:
                dh[cell] = Matrix.from_json(c["dh"], f)
            if "dv" in c:
                dv[cell] = Matrix.from_json(c["dv"], f)
        return cls.build(f, dims, dh, dv)


# ------------------------- construction helpers -------------------------

def single_row(field: Field, q: int, row: CochainComplex) -> DoubleComplex:
    """A cochain complex placed in row q as the horizontal differential."""
    dims = {(p, q): row.dim(p) for p in row.degrees()}
    dh = {(p, q): row.d(p) for p in row.degrees() if p < row.hi}
    return DoubleComplex.build(field, dims, dh)


def staircase(field: Field, p: int, q: int, steps: int) -> DoubleComplex:
    """Zigzag of one-dimensional cells carrying a nonzero d_steps from (p, q).

    steps = 0 is a single cell. Cells x_0..x_{s-1} at (p+i, q-i), y_i at
    (p+i, q-i+1) for 1 ≤ i < s, and z at (p+s, q-s+1), with d_h x_i = y_{i+1}
    (or z), d_v x_i = y_i.
    """
    one = Matrix.identity(field, 1)
    dims: Dict[Cell, int] = {(p, q): 1}
    dh: Dict[Cell, Matrix] = {}
    dv: Dict[Cell, Matrix] = {}
    for i in range(steps):
        x = (p + i, q - i)
        dims[x] = 1
        nxt = (p + i + 1, q - i)
        dims[nxt] = 1
        dh[x] = one
        if i >= 1:
            dv[x] = one
    return DoubleComplex.build(field, dims, dh, dv)


def vertical_pair(field: Field, p: int, q: int) -> DoubleComplex:
    one = Matrix.identity(field, 1)
    return DoubleComplex.build(field, {(p, q): 1, (p, q + 1): 1}, {}, {(p, q): one})


def direct_sum(field: Field, parts: Sequence[DoubleComplex]) -> DoubleComplex:
    cells = sorted({c for d in parts for c in d.cells()})
    dims = {c: sum(d.dim(*c) for d in parts) for c in cells}
    dh = {(p, q): Matrix.direct_sum(field, [d.h(p, q) for d in parts]) for p, q in cells}
    dv = {(p, q): Matrix.direct_sum(field, [d.v(p, q) for d in parts]) for p, q in cells}
    return DoubleComplex.build(field, dims, dh, dv, check=False)


def _random_invertible(field: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(field, n, n, rng, density=0.8)
        if rank(g) == n:
            return g


def conjugate(dc: DoubleComplex, rng: random.Random) -> DoubleComplex:
    """Change the basis of every cell by a random invertible matrix."""
    g = {c: _random_invertible(dc.field, dc.dim(*c), rng) for c in dc.cells()}
    gi = {c: inverse(m) for c, m in g.items()}
    dims = {c: dc.dim(*c) for c in dc.cells()}
    dh, dv = {}, {}
    for p, q in dc.cells():
        if (p + 1, q) in g:
            dh[(p, q)] = g[(p + 1, q)] @ dc.h(p, q) @ gi[(p, q)]
        if (p, q + 1) in g:
            dv[(p, q)] = g[(p, q + 1)] @ dc.v(p, q) @ gi[(p, q)]
    return DoubleComplex.build(dc.field, dims, dh, dv)


def random_double_complex(field: Field, rng: random.Random, width: int = 3, height: int = 3,
                          pieces: int = 4) -> DoubleComplex:
    """Conjugated sum of staircases and vertical pairs inside a width × height box."""
    parts = [DoubleComplex.build(field, {(p, q): 0 for p in range(width) for q in range(height)})]
    for _ in range(pieces):
        kind = rng.random()
        if kind < 0.2 and height >= 2:
            parts.append(vertical_pair(field, rng.randrange(width), rng.randrange(height - 1)))
            continue
        steps = rng.randint(0, min(width - 1, height))
        p = rng.randrange(width - steps)
        q = rng.randint(max(steps - 1, 0), height - 1) if steps else rng.randrange(height)
        parts.append(staircase(field, p, q, steps))
    return conjugate(direct_sum(field, parts), rng)


# ------------------------- Z_r / B_r towers -------------------------

def _filtered_indices(dc: DoubleComplex, k: int, lo: int, hi: Optional[int] = None) -> List[int]:
    """Basis indices of Tot^k lying in columns lo ≤ p (< hi)."""
    out = []
    for p, off in dc.offsets(k).items():
        if p >= lo and (hi is None or p < hi):
            out.extend(range(off, off + dc.dim(p, k - p)))
    return out


def _lift_system(dc: DoubleComplex, p: int, q: int, r: Optional[int]) -> Tuple[List[int], Matrix]:
    """Columns of F^p Tot^k and the rows of D that must vanish (Dx ∈ F^{p+r})."""
    k = p + q
    D = dc.total_differential(k)
    cols = _filtered_indices(dc, k, p)
    rows = _filtered_indices(dc, k + 1, p, None if r is None else p + r)
    return cols, D.submatrix(rows, cols)


def _leading(dc: DoubleComplex, p: int, q: int, cols: List[int], x: Sequence[Any]) -> Vector:
    full = [dc.field.zero] * dc.total_dim(p + q)
    for j, c in enumerate(cols):
        full[c] = x[j]
    return dc.component(p, p + q, full)


@lru_cache(maxsize=4096)
def cycles_at(dc: DoubleComplex, p: int, q: int, r: Optional[int]) -> Subspace:
    """Z_r^{p,q}; r = None means Z_∞."""
    f = dc.field
    n = dc.dim(p, q)
    if n == 0:
        return Subspace.zero(f, 0)
    cols, M = _lift_system(dc, p, q, r)
    ker = kernel_basis(M) if M.rows else Subspace.full(f, len(cols))
    return Subspace.span(f, n, [_leading(dc, p, q, cols, v) for v in ker.vectors()])


@lru_cache(maxsize=4096)
def boundaries_at(dc: DoubleComplex, p: int, q: int, r: Optional[int]) -> Subspace:
    """B_r^{p,q}; r = None means B_∞."""
    f = dc.field
    n = dc.dim(p, q)
    if n == 0:
        return Subspace.zero(f, 0)
    k = p + q
    D = dc.total_differential(k - 1)
    start = dc.p_lo if r is None else p - r + 1
    cols = _filtered_indices(dc, k - 1, start)
    if not cols:
        return Subspace.zero(f, n)
    below = _filtered_indices(dc, k, start, p)
    lead = _filtered_indices(dc, k, p, p + 1)
    ker = kernel_basis(D.submatrix(below, cols)) if below else Subspace.full(f, len(cols))
    lead_map = D.submatrix(lead, cols)
    return Subspace.span(f, n, [lead_map.apply(v) for v in ker.vectors()])


def _quotient_group(p: int, q: int, Z: Subspace, B: Subspace) -> CohomologyGroup:
    kept: List[Vector] = []
    span = B
    for z in Z.vectors():
        if not span.contains(z):
            kept.append(z)
            span = span.sum(Subspace.span(Z.field, Z.ambient_dim, [z]))
    return CohomologyGroup(p + q, len(kept), tuple(kept), Z, B)


def page_group(dc: DoubleComplex, p: int, q: int, r: Optional[int]) -> CohomologyGroup:
    """E_r^{p,q} with canonical representatives; r = None means E_∞."""
    if r is not None and r >= dc.r_max:
        r = None
    return _quotient_group(p, q, cycles_at(dc, p, q, r), boundaries_at(dc, p, q, r))


def lift_to_filtration(dc: DoubleComplex, p: int, q: int, z: Sequence[Any], r: Optional[int]) -> Optional[Vector]:
    """x ∈ Tot^{p+q}, x ∈ F^p, with leading part z and Dx ∈ F^{p+r} (closed when r is None)."""
    f = dc.field
    k = p + q
    cols, M = _lift_system(dc, p, q, r)
    lead = _filtered_indices(dc, k, p, p + 1)
    pos = {c: j for j, c in enumerate(cols)}
    P = Matrix(f, len(lead), len(cols), tuple(
        f.one if pos[lead[i]] == j else f.zero for i in range(len(lead)) for j in range(len(cols))))
    system = Matrix.vstack(f, [M, P], cols=len(cols))
    rhs = f.zero_vector(M.rows) + tuple(z)
    x = solve(system, rhs)
    if x is None:
        return None
    full = [f.zero] * dc.total_dim(k)
    for j, c in enumerate(cols):
        full[c] = x[j]
    return tuple(full)


# ------------------------- pages -------------------------

@dataclass(frozen=True)
class SpectralPage:
    r: int
    groups: Dict[Cell, CohomologyGroup]
    differentials: Dict[Cell, Matrix]

    def dim(self, p: int, q: int) -> int:
        g = self.groups.get((p, q))
        return g.dim if g else 0

    def dims(self) -> Dict[Cell, int]:
        return {c: g.dim for c, g in self.groups.items()}

    def arrows(self) -> List[Dict[str, Any]]:
        out = []
        for (p, q), m in sorted(self.differentials.items()):
            rk = rank(m)
            if rk:
                out.append({"from": [p, q], "to": [p + self.r, q - self.r + 1], "rank": rk})
        return out

    def to_json(self) -> Dict[str, Any]:
        return {"r": self.r,
                "dims": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(self.dims().items())],
                "arrows": self.arrows()}


def page_differential(dc: DoubleComplex, p: int, q: int, r: int) -> Matrix:
    f = dc.field
    src = page_group(dc, p, q, r)
    tp, tq = p + r, q - r + 1
    dst = page_group(dc, tp, tq, r)
    k = p + q
    cols = []
    for z in src.representatives:
        x = lift_to_filtration(dc, p, q, z, r)
        if x is None:
            raise NotACocycle(f"representative at {(p, q)} does not lift to page {r}")
        dx = dc.total_differential(k).apply(x)
        w = dc.component(tp, k + 1, dx) if dc.dim(tp, tq) else ()
        cols.append(dst.coordinates(w) if dst.dim else ())
    if not cols:
        return Matrix.zeros(f, dst.dim, 0)
    return Matrix.from_columns(f, cols, dst.dim)


def page(dc: DoubleComplex, r: int) -> SpectralPage:
    groups = {c: page_group(dc, c[0], c[1], r) for c in dc.cells()}
    diffs = {c: page_differential(dc, c[0], c[1], r) for c in dc.cells()}
    LOGGER.debug("E_%d dims %s", r, {c: g.dim for c, g in groups.items() if g.dim})
    return SpectralPage(r, groups, diffs)


def pages(dc: DoubleComplex, up_to: int) -> List[SpectralPage]:
    """Pages E_2 … E_{up_to}."""
    return [page(dc, r) for r in range(2, up_to + 1)]


def e_infinity(dc: DoubleComplex) -> Dict[Cell, int]:
    return {c: page_group(dc, c[0], c[1], None).dim for c in dc.cells()}


def abutment_check(dc: DoubleComplex) -> bool:
    einf = e_infinity(dc)
    tot = dc.total()
    for k in dc.total_degrees():
        graded = sum(d for (p, q), d in einf.items() if p + q == k)
        if graded != tot.cohomology(k).dim:
            LOGGER.debug("abutment fails in degree %d: %d vs %d", k, graded, tot.cohomology(k).dim)
            return False
    return True


# ------------------------- class map -------------------------

@dataclass(frozen=True)
class ClassLift:
    p: int
    q: int
    source: Vector
    status: str
    page: Optional[int] = None
    total_cocycle: Optional[Vector] = None
    alpha: Optional[Vector] = None

    SURVIVES = "survives"
    DIES = "dies"

    @property
    def survives(self) -> bool:
        return self.status == self.SURVIVES

    def to_json(self, field: Field) -> Dict[str, Any]:
        out: Dict[str, Any] = {"p": self.p, "q": self.q, "status": self.status}
        if self.page is not None:
            out["page"] = self.page
        if self.alpha is not None:
            out["alpha"] = [field.to_str(x) for x in self.alpha]
        return out


def class_map(dc: DoubleComplex, p: int, q: int, a: Sequence[Any]) -> ClassLift:
    """Follow a ∈ E_2^{p,q} through the pages to E_∞ and lift it to Tot.

    A cocycle that is already zero on E_2 is the zero class: it survives with
    a zero total cocycle and α = 0, and carries no page. A class that is
    nonzero on E_2 dies on page r when it supports a nonzero d_r or is hit by
    one; ``page`` records that r.
    """
    f = dc.field
    a = f.vector(a)
    if len(a) != dc.dim(p, q):
        raise ShapeMismatch(f"cochain of length {len(a)} at a cell of dim {dc.dim(p, q)}")
    if not cycles_at(dc, p, q, 2).contains(a):
        raise NotACocycle(f"not an E_2 cocycle at {(p, q)}")
    k = p + q
    tot = dc.total()
    H = tot.cohomology(k)
    if boundaries_at(dc, p, q, 2).contains(a):
        return ClassLift(p, q, a, ClassLift.SURVIVES, None, f.zero_vector(dc.total_dim(k)), f.zero_vector(H.dim))
    for r in range(2, dc.r_max):
        if not cycles_at(dc, p, q, r + 1).contains(a) or boundaries_at(dc, p, q, r + 1).contains(a):
            LOGGER.debug("class at %s dies on page %d", (p, q), r)
            return ClassLift(p, q, a, ClassLift.DIES, r)
    x = lift_to_filtration(dc, p, q, a, None)
    if x is None:
        raise NotACocycle(f"no total cocycle with leading part at {(p, q)}")
    return ClassLift(p, q, a, ClassLift.SURVIVES, None, x, H.coordinates(x))


def filtration_leading_part(dc: DoubleComplex, p: int, k: int, x: Sequence[Any]) -> Vector:
    """E_∞^{p,k-p} coordinates of the leading part of a total cocycle x ∈ F^p."""
    for p2 in dc.columns_of(k):
        if p2 < p and not vec_is_zero(dc.component(p2, k, x)):
            raise ShapeMismatch(f"cocycle has components below column {p}")
    lead = dc.component(p, k, x)
    return page_group(dc, p, k - p, None).coordinates(lead)


# ------------------------- reports -------------------------

def render_grid(dims: Dict[Cell, int], title: str = "") -> str:
    """Aligned text grid, q descending down the rows, p across the columns."""
    if not dims:
        return title
    ps = sorted({p for p, _ in dims})
    qs = sorted({q for _, q in dims}, reverse=True)
    width = max(3, max(len(str(d)) for d in dims.values()) + 1)
    lines = [title] if title else []
    lines.append("q\\p " + "".join(f"{p:>{width}}" for p in ps))
    for q in qs:
        lines.append(f"{q:>3} " + "".join(f"{dims.get((p, q), 0):>{width}}" for p in ps))
    return "\n".join(lines)


def spectral_report(dc: DoubleComplex, up_to: Optional[int] = None) -> Dict[str, Any]:
    up_to = dc.r_max if up_to is None else up_to
    pgs = pages(dc, up_to)
    einf = e_infinity(dc)
    tot = dc.total()
    return {
        "pages": [pg.to_json() for pg in pgs],
        "e_infinity": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(einf.items())],
        "total_dims": {str(k): tot.cohomology(k).dim for k in dc.total_degrees()},
        "abutment": abutment_check(dc),
        "r_max": dc.r_max,
        "text": "\n\n".join([render_grid(pg.dims(), f"E_{pg.r}") for pg in pgs]
                            + [render_grid(einf, "E_inf")]),
    }
