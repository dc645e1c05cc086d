# -*- coding: utf-8 -*-
"""
homcx.py
========
Hom complexes Hom^•(P, B) between bounded cochain complexes.

    Hom(P, B)^m = ⊕_{i} Hom(P^i, B^{m+i})          (i over the support of P)
    (d s)_i     = d_B ∘ s_i − (−1)^m s_{i+1} ∘ d_P

Basis of degree m: ascending i, then each block Hom(P^i, B^{m+i}) vectorized
column-major; ``degree_index[m]`` lists the (i, row, col) label of every
basis vector. With this layout Con(Hom(P, g)) and Hom(P, Con(g)) differ only
by a fixed relabelling of basis vectors, so the comparison in
``cone_hom_commutes`` is a literal matrix equality after permutation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

from cochain import ChainMap, CochainComplex, cone, cylinder
from errors import FieldMismatch, ShapeMismatch
from linalg import Matrix, Vector, kron, unvec_col, vec_col

LOGGER = logging.getLogger(__name__)

Label = Tuple[int, int, int]


def hom_labels(P: CochainComplex, B: CochainComplex, m: int) -> List[Label]:
    labels: List[Label] = []
    for i in P.degrees():
        rows, cols = B.dim(m + i), P.dim(i)
        labels.extend((i, r, c) for c in range(cols) for r in range(rows))
    return labels


def _hom_dim(P: CochainComplex, B: CochainComplex, m: int) -> int:
    return sum(P.dim(i) * B.dim(m + i) for i in P.degrees())


@dataclass(frozen=True)
class HomComplex:
    underlying: CochainComplex
    src: CochainComplex
    dst: CochainComplex
    degree_index: Dict[int, Tuple[Label, ...]]

    def offsets(self, m: int) -> Dict[int, int]:
        out, pos = {}, 0
        for i in self.src.degrees():
            out[i] = pos
            pos += self.src.dim(i) * self.dst.dim(m + i)
        return out

    def to_maps(self, m: int, v: Sequence[Any]) -> Dict[int, Matrix]:
        """Split a degree-m vector into its components s_i: P^i → B^{m+i}."""
        if len(v) != self.underlying.dim(m):
            raise ShapeMismatch(f"vector of length {len(v)} in Hom^{m} of dim {self.underlying.dim(m)}")
        offs = self.offsets(m)
        out = {}
        for i in self.src.degrees():
            r, c = self.dst.dim(m + i), self.src.dim(i)
            out[i] = unvec_col(self.src.field, v[offs[i]:offs[i] + r * c], r, c)
        return out

    def from_maps(self, m: int, maps: Dict[int, Matrix]) -> Vector:
        f = self.src.field
        out: List[Any] = []
        for i in self.src.degrees():
            r, c = self.dst.dim(m + i), self.src.dim(i)
            blk = maps.get(i)
            if blk is None:
                blk = Matrix.zeros(f, r, c)
            if blk.shape != (r, c):
                raise ShapeMismatch(f"component {i} must be {r}x{c}")
            out.extend(vec_col(blk))
        return tuple(out)


def hom_support(P: CochainComplex, B: CochainComplex) -> Tuple[int, int]:
    return B.lo - P.hi, B.hi - P.lo


def hom_differential(P: CochainComplex, B: CochainComplex, m: int) -> Matrix:
    f = P.field
    sign = -1 if m % 2 else 1
    degs = list(P.degrees())
    row_dims = [P.dim(i) * B.dim(m + 1 + i) for i in degs]
    col_dims = [P.dim(i) * B.dim(m + i) for i in degs]
    grid: List[List[Any]] = [[None] * len(degs) for _ in degs]
    for k, i in enumerate(degs):
        grid[k][k] = kron(Matrix.identity(f, P.dim(i)), B.d(m + i))
        if k + 1 < len(degs):
            # − (−1)^m s_{i+1} ∘ d_P^i
            grid[k][k + 1] = kron(P.d(i).transpose(), Matrix.identity(f, B.dim(m + 1 + i))).scale(-sign)
    return Matrix.block(f, grid, row_dims, col_dims)


def hom_complex(p: CochainComplex, b: CochainComplex, check: bool = True) -> HomComplex:
    if p.field != b.field:
        raise FieldMismatch(f"Hom between complexes over {p.field} and {b.field}")
    lo, hi = hom_support(p, b)
    under = CochainComplex.from_support(
        p.field, lo, hi, lambda m: _hom_dim(p, b, m), lambda m: hom_differential(p, b, m), check=check
    )
    index = {m: tuple(hom_labels(p, b, m)) for m in under.degrees()}
    LOGGER.debug("Hom complex on [%d, %d] dims %s", lo, hi, under.dims)
    return HomComplex(under, p, b, index)


def induced_hom_map(p: CochainComplex, g: ChainMap, check: bool = True) -> ChainMap:
    """ĝ: Hom(P, K) → Hom(P, L), s ↦ (g ∘ s_i)."""
    f = p.field
    src = hom_complex(p, g.src, check=check).underlying
    dst = hom_complex(p, g.dst, check=check).underlying
    comps = {}
    for m in range(min(src.lo, dst.lo), max(src.hi, dst.hi) + 1):
        blocks = [kron(Matrix.identity(f, p.dim(i)), g.component(m + i)) for i in p.degrees()]
        comps[m] = Matrix.direct_sum(f, blocks)
    return ChainMap(src, dst, comps)


def induced_hom_map_contravariant(h: ChainMap, b: CochainComplex, check: bool = True) -> ChainMap:
    """Hom(h, B): Hom(P', B) → Hom(P, B), s ↦ (s_i ∘ h^i) for h: P → P'."""
    f = b.field
    P, P2 = h.src, h.dst
    src = hom_complex(P2, b, check=check)
    dst = hom_complex(P, b, check=check)
    comps = {}
    for m in range(min(src.underlying.lo, dst.underlying.lo), max(src.underlying.hi, dst.underlying.hi) + 1):
        rows = _hom_dim(P, b, m)
        cols = _hom_dim(P2, b, m)
        if rows == 0 or cols == 0:
            comps[m] = Matrix.zeros(f, rows, cols)
            continue
        rdims = [P.dim(i) * b.dim(m + i) for i in P.degrees()]
        cdims = [P2.dim(i) * b.dim(m + i) for i in P2.degrees()]
        rdeg, cdeg = list(P.degrees()), list(P2.degrees())
        grid: List[List[Any]] = [[None] * len(cdeg) for _ in rdeg]
        for a, i in enumerate(rdeg):
            if i in cdeg:
                grid[a][cdeg.index(i)] = kron(h.component(i).transpose(), Matrix.identity(f, b.dim(m + i)))
        comps[m] = Matrix.block(f, grid, rdims, cdims)
    return ChainMap(src.underlying, dst.underlying, comps)


# ------------------------- cone / cylinder commutation -------------------------

def _permutation(field, src_labels: Sequence[Any], dst_labels: Sequence[Any], relabel: Callable) -> Matrix:
    pos = {lab: k for k, lab in enumerate(dst_labels)}
    n = len(dst_labels)
    entries = [field.zero] * (n * len(src_labels))
    for j, lab in enumerate(src_labels):
        entries[pos[relabel(lab)] * len(src_labels) + j] = field.one
    return Matrix(field, n, len(src_labels), tuple(entries))


def _agree_after_relabel(X: CochainComplex, Y: CochainComplex,
                         labels_x: Callable[[int], List[Any]], labels_y: Callable[[int], List[Any]],
                         relabel: Callable) -> bool:
    lo = min(X.lo, Y.lo) - 1
    hi = max(X.hi, Y.hi) + 1
    perms = {}
    for m in range(lo, hi + 1):
        lx, ly = labels_x(m), labels_y(m)
        if len(lx) != X.dim(m) or len(ly) != Y.dim(m) or len(lx) != len(ly):
            LOGGER.debug("dimension mismatch in degree %d: %d vs %d", m, X.dim(m), Y.dim(m))
            return False
        try:
            perms[m] = _permutation(X.field, lx, ly, relabel(m))
        except KeyError:
            return False
    for m in range(lo, hi):
        if Y.d(m) @ perms[m] != perms[m + 1] @ X.d(m):
            LOGGER.debug("differentials differ in degree %d", m)
            return False
    return True


def cone_hom_commutes(p: CochainComplex, g: ChainMap, cone_builder: Callable = cone) -> bool:
    """Con(Hom(P, g)) equals Hom(P, Con(g)) as based complexes."""
    K, L = g.src, g.dst
    left = cone_builder(induced_hom_map(p, g, check=False))
    right = hom_complex(p, cone_builder(g), check=False).underlying

    def labels_x(m: int) -> List[Any]:
        return [("K",) + lab for lab in hom_labels(p, K, m + 1)] + [("L",) + lab for lab in hom_labels(p, L, m)]

    def labels_y(m: int) -> List[Any]:
        out: List[Any] = []
        for i in p.degrees():
            rows = K.dim(m + 1 + i) + L.dim(m + i)
            out.extend((i, r, c) for c in range(p.dim(i)) for r in range(rows))
        return out

    def relabel(m: int):
        def _f(lab):
            part, i, r, c = lab
            return (i, r, c) if part == "K" else (i, K.dim(m + 1 + i) + r, c)
        return _f

    return _agree_after_relabel(left, right, labels_x, labels_y, relabel)


def cylinder_hom_commutes(p: CochainComplex, g: ChainMap, cylinder_builder: Callable = cylinder) -> bool:
    """Cyl(Hom(P, g)) equals Hom(P, Cyl(g)) as based complexes."""
    B, A = g.src, g.dst
    left = cylinder_builder(induced_hom_map(p, g, check=False)).complex
    right = hom_complex(p, cylinder_builder(g).complex, check=False).underlying

    def labels_x(m: int) -> List[Any]:
        return ([(0,) + lab for lab in hom_labels(p, B, m)]
                + [(1,) + lab for lab in hom_labels(p, B, m + 1)]
                + [(2,) + lab for lab in hom_labels(p, A, m)])

    def labels_y(m: int) -> List[Any]:
        out: List[Any] = []
        for i in p.degrees():
            rows = B.dim(m + i) + B.dim(m + i + 1) + A.dim(m + i)
            out.extend((i, r, c) for c in range(p.dim(i)) for r in range(rows))
        return out

    def relabel(m: int):
        def _f(lab):
            part, i, r, c = lab
            if part == 0:
                return (i, r, c)
            if part == 1:
                return (i, B.dim(m + i) + r, c)
            return (i, B.dim(m + i) + B.dim(m + i + 1) + r, c)
        return _f

    return _agree_after_relabel(left, right, labels_x, labels_y, relabel)
