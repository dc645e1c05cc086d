# -*- coding: utf-8 -*-
"""
cech.py
=======
Čech complexes on finite nerves.

A face is an ascending tuple of vertices; faces are ordered by size, then
lexicographically. Presheaves store only codimension-one restrictions
F(τ) → F(σ) keyed by (τ, σ), τ = σ minus one vertex. The coboundary is

    (δc)(v_0 … v_{q+1}) = Σ_j (−1)^j res(c(v_0 … v̂_j … v_{q+1})).

Hypercohomology of a presheaf of complexes uses the double complex with
Čech degree as the first index and D = δ + (−1)^p ∂* (``sign="vertical"``),
or (−1)^q δ + ∂* (``sign="horizontal"``).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra import AModule, ExtGroup, ModuleMap, ext_group, ext_map_covariant, free_resolution
from cochain import (
    ChainMap, CochainComplex, LongExactSequence, ShortExactSequence, long_exact_sequence,
)
from errors import (
    FunctorialityViolation, InvalidInput, NotACocycle, NotAMorphism, ParseError, ShapeMismatch,
)
from linalg import Field, Matrix, Subspace, Vector, image_basis, kernel_basis, vec_is_zero
from spectral import DoubleComplex

LOGGER = logging.getLogger(__name__)

Face = Tuple[int, ...]


# ------------------------- Nerve -------------------------

@dataclass(frozen=True)
class Nerve:
    vertex_count: int
    faces: Tuple[Face, ...]

    @classmethod
    def from_faces(cls, vertex_count: int, faces: Sequence[Sequence[int]]) -> "Nerve":
        """Downward closure of the given faces plus every vertex."""
        closed = {(v,) for v in range(vertex_count)}
        for face in faces:
            fc = tuple(sorted(set(int(v) for v in face)))
            if any(v < 0 or v >= vertex_count for v in fc):
                raise InvalidInput(f"face {list(face)} uses an unknown vertex")
            for k in range(1, len(fc) + 1):
                closed.update(itertools.combinations(fc, k))
        return cls(vertex_count, tuple(sorted(closed, key=lambda s: (len(s), s))))

    @classmethod
    def simplex(cls, n: int) -> "Nerve":
        return cls.from_faces(n, [tuple(range(n))] if n else [])

    @classmethod
    def point(cls) -> "Nerve":
        return cls.simplex(1)

    @classmethod
    def discrete(cls, n: int) -> "Nerve":
        return cls.from_faces(n, [])

    @classmethod
    def triangle_boundary(cls) -> "Nerve":
        return cls.from_faces(3, [(0, 1), (0, 2), (1, 2)])

    def validate(self) -> "Nerve":
        seen = set(self.faces)
        if len(seen) != len(self.faces):
            raise InvalidInput("duplicate faces")
        for face in self.faces:
            if list(face) != sorted(set(face)) or not face:
                raise InvalidInput(f"face {face} is not ascending")
            for k in range(1, len(face)):
                for sub in itertools.combinations(face, k):
                    if sub not in seen:
                        raise InvalidInput(f"face {face} lacks its subface {sub}")
        return self

    @property
    def max_dim(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    def faces_of_dim(self, q: int) -> List[Face]:
        return [f for f in self.faces if len(f) == q + 1]

    def to_json(self) -> Dict[str, Any]:
        return {"vertices": self.vertex_count, "faces": [list(f) for f in self.faces]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "Nerve":
        if isinstance(obj, str):
            named = {"point": cls.point(), "triangle_boundary": cls.triangle_boundary()}
            if obj in named:
                return named[obj]
            raise ParseError(f"unknown nerve {obj!r}")
        if not isinstance(obj, dict) or set(obj) - {"vertices", "faces"}:
            raise ParseError("a nerve is {\"vertices\": n, \"faces\": [[…], …]}")
        return cls.from_faces(int(obj["vertices"]), obj.get("faces", [])).validate()


def codim_one(face: Face) -> List[Tuple[int, Face]]:
    """(j, face minus its j-th vertex) for faces of size ≥ 2."""
    if len(face) < 2:
        return []
    return [(j, face[:j] + face[j + 1:]) for j in range(len(face))]


def _coboundary(nerve: Nerve, q: int, dim_of: Callable[[Face], int],
                res: Callable[[Face, Face], Matrix], field: Field) -> Matrix:
    src, dst = nerve.faces_of_dim(q), nerve.faces_of_dim(q + 1)
    pos = {f: k for k, f in enumerate(src)}
    grid: List[List[Optional[Matrix]]] = [[None] * len(src) for _ in dst]
    for r, sigma in enumerate(dst):
        for j, tau in codim_one(sigma):
            m = res(tau, sigma)
            grid[r][pos[tau]] = m if j % 2 == 0 else -m
    return Matrix.block(field, grid, [dim_of(s) for s in dst], [dim_of(t) for t in src])


def _faces_squares(nerve: Nerve):
    """(τ, τ∪a, τ∪b, σ) for every codimension-two pair τ ⊂ σ."""
    for sigma in nerve.faces:
        if len(sigma) < 3:
            continue
        for a, b in itertools.combinations(range(len(sigma)), 2):
            tau = tuple(v for k, v in enumerate(sigma) if k not in (a, b))
            via_a = tuple(v for k, v in enumerate(sigma) if k != b)
            via_b = tuple(v for k, v in enumerate(sigma) if k != a)
            yield tau, via_a, via_b, sigma


# ------------------------- NervePresheaf -------------------------

@dataclass(frozen=True)
class NervePresheaf:
    nerve: Nerve
    field: Field
    dims: Tuple[int, ...]
    restrictions: Tuple[Tuple[Tuple[Face, Face], Matrix], ...]

    @classmethod
    def build(cls, nerve: Nerve, field: Field, dims: Dict[Face, int],
              restrictions: Dict[Tuple[Face, Face], Matrix], check: bool = True) -> "NervePresheaf":
        d = tuple(int(dims.get(f, 0)) for f in nerve.faces)
        res = tuple(sorted(restrictions.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0])))
        p = cls(nerve, field, d, res)
        if check:
            p.validate()
        return p

    def dim(self, face: Face) -> int:
        return self.dims[self.nerve.faces.index(face)]

    def restriction(self, tau: Face, sigma: Face) -> Matrix:
        for key, m in self.restrictions:
            if key == (tau, sigma):
                return m
        return Matrix.zeros(self.field, self.dim(sigma), self.dim(tau))

    def validate(self) -> "NervePresheaf":
        for (tau, sigma), m in self.restrictions:
            if m.shape != (self.dim(sigma), self.dim(tau)):
                raise ShapeMismatch(f"restriction {tau}→{sigma} has shape {m.shape}")
        for tau, a, b, sigma in _faces_squares(self.nerve):
            left = self.restriction(a, sigma) @ self.restriction(tau, a)
            right = self.restriction(b, sigma) @ self.restriction(tau, b)
            if left != right:
                raise FunctorialityViolation(f"restrictions {tau}→{sigma} disagree",
                                             {"from": list(tau), "to": list(sigma)})
        return self

    def cochain_dim(self, q: int) -> int:
        return sum(self.dim(f) for f in self.nerve.faces_of_dim(q))

    def coboundary(self, q: int) -> Matrix:
        return _coboundary(self.nerve, q, self.dim, self.restriction, self.field)

    def to_json(self) -> Dict[str, Any]:
        return {
            "nerve": self.nerve.to_json(),
            "dims": [{"face": list(f), "dim": d} for f, d in zip(self.nerve.faces, self.dims)],
            "restrictions": [{"from": list(t), "to": list(s), "matrix": m.to_json()} for (t, s), m in self.restrictions],
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any], field: Field) -> "NervePresheaf":
        if not isinstance(obj, dict) or "nerve" not in obj:
            raise ParseError("a presheaf needs a nerve")
        extra = set(obj) - {"nerve", "dims", "restrictions", "constant", "skyscraper"}
        if extra:
            raise ParseError(f"unknown presheaf fields {sorted(extra)}")
        nerve = Nerve.from_json(obj["nerve"])
        if "constant" in obj:
            return constant_presheaf(nerve, field, int(obj["constant"]))
        if "skyscraper" in obj:
            sk = obj["skyscraper"]
            return skyscraper_presheaf(nerve, field, sk["points"], sk.get("stalk_dim", 1))
        dims = {tuple(e["face"]): int(e["dim"]) for e in obj.get("dims", [])}
        res = {(tuple(e["from"]), tuple(e["to"])): Matrix.from_json(e["matrix"], field)
               for e in obj.get("restrictions", [])}
        return cls.build(nerve, field, dims, res)


def constant_presheaf(nerve: Nerve, field: Field, dim: int) -> NervePresheaf:
    ident = Matrix.identity(field, dim)
    res = {(tau, sigma): ident for sigma in nerve.faces for _, tau in codim_one(sigma)}
    return NervePresheaf.build(nerve, field, {f: dim for f in nerve.faces}, res, check=False)


def _projection(field: Field, src_pts: Sequence[int], dst_pts: Sequence[int], stalk: Callable[[int], int]) -> Matrix:
    col_off, c = {}, 0
    for x in src_pts:
        col_off[x] = c
        c += stalk(x)
    rows = sum(stalk(x) for x in dst_pts)
    entries = [field.zero] * (rows * c)
    r = 0
    for x in dst_pts:
        for k in range(stalk(x)):
            entries[(r + k) * c + col_off[x] + k] = field.one
        r += stalk(x)
    return Matrix(field, rows, c, tuple(entries))


def face_support(points_per_vertex_open: Sequence[Sequence[int]], face: Face) -> List[int]:
    common = None
    for v in face:
        pts = set(points_per_vertex_open[v])
        common = pts if common is None else common & pts
    return sorted(common or ())


def skyscraper_presheaf(nerve: Nerve, field: Field, points_per_vertex_open: Sequence[Sequence[int]],
                        stalk_dim: Any = 1, point_count: Optional[int] = None) -> NervePresheaf:
    """⊕ over the points in every open of a face; restrictions project.

    ``stalk_dim`` is one count for all points or a list per point.
    """
    if len(points_per_vertex_open) != nerve.vertex_count:
        raise ShapeMismatch("one point list per vertex open is required")
    assigned = {int(x) for pts in points_per_vertex_open for x in pts}
    n_pts = point_count if point_count is not None else (max(assigned) + 1 if assigned else 0)
    missing = set(range(n_pts)) - assigned
    if missing:
        raise InvalidInput(f"points {sorted(missing)} lie in no open")
    stalks = list(stalk_dim) if isinstance(stalk_dim, (list, tuple)) else [int(stalk_dim)] * n_pts

    def stalk(x: int) -> int:
        return stalks[x]

    dims = {f: sum(stalk(x) for x in face_support(points_per_vertex_open, f)) for f in nerve.faces}
    res = {}
    for sigma in nerve.faces:
        for _, tau in codim_one(sigma):
            res[(tau, sigma)] = _projection(field, face_support(points_per_vertex_open, tau),
                                            face_support(points_per_vertex_open, sigma), stalk)
    return NervePresheaf.build(nerve, field, dims, res)


def cech_complex(p: NervePresheaf) -> CochainComplex:
    top = p.nerve.max_dim
    if top < 0:
        return CochainComplex.zero(p.field)
    cx = CochainComplex.from_support(p.field, 0, top, p.cochain_dim, p.coboundary)
    LOGGER.debug("Čech complex dims %s", cx.dims)
    return cx


@dataclass(frozen=True)
class CechClass:
    presheaf: NervePresheaf
    degree: int
    cochain: Vector

    def __post_init__(self):
        if len(self.cochain) != self.presheaf.cochain_dim(self.degree):
            raise ShapeMismatch(f"cochain of length {len(self.cochain)} in degree {self.degree}")
        if not vec_is_zero(self.presheaf.coboundary(self.degree).apply(self.cochain)):
            raise NotACocycle(f"Čech cochain is not closed in degree {self.degree}")

    def values(self) -> Dict[Face, Vector]:
        out, pos = {}, 0
        for face in self.presheaf.nerve.faces_of_dim(self.degree):
            n = self.presheaf.dim(face)
            out[face] = tuple(self.cochain[pos:pos + n])
            pos += n
        return out

    def coordinates(self) -> Vector:
        return cech_complex(self.presheaf).cohomology(self.degree).coordinates(self.cochain)


def split_cochain(nerve: Nerve, q: int, dim_of: Callable[[Face], int], v: Sequence[Any]) -> Dict[Face, Vector]:
    out, pos = {}, 0
    for face in nerve.faces_of_dim(q):
        n = dim_of(face)
        out[face] = tuple(v[pos:pos + n])
        pos += n
    return out


def join_cochain(nerve: Nerve, q: int, values: Dict[Face, Sequence[Any]]) -> Vector:
    out: List[Any] = []
    for face in nerve.faces_of_dim(q):
        out.extend(values[face])
    return tuple(out)


# ------------------------- ComplexPresheaf -------------------------

@dataclass(frozen=True)
class ComplexPresheaf:
    nerve: Nerve
    complexes: Tuple[CochainComplex, ...]
    restrictions: Tuple[Tuple[Tuple[Face, Face], ChainMap], ...]

    @classmethod
    def build(cls, nerve: Nerve, complexes: Dict[Face, CochainComplex],
              restrictions: Dict[Tuple[Face, Face], ChainMap], check: bool = True) -> "ComplexPresheaf":
        cx = tuple(complexes[f] for f in nerve.faces)
        res = tuple(sorted(restrictions.items(), key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0])))
        cp = cls(nerve, cx, res)
        if check:
            cp.validate()
        return cp

    @classmethod
    def constant(cls, nerve: Nerve, complex: CochainComplex) -> "ComplexPresheaf":
        ident = ChainMap.identity(complex)
        res = {(tau, sigma): ident for sigma in nerve.faces for _, tau in codim_one(sigma)}
        return cls.build(nerve, {f: complex for f in nerve.faces}, res, check=False)

    @property
    def field(self) -> Field:
        return self.complexes[0].field

    def complex(self, face: Face) -> CochainComplex:
        return self.complexes[self.nerve.faces.index(face)]

    def restriction(self, tau: Face, sigma: Face) -> ChainMap:
        for key, m in self.restrictions:
            if key == (tau, sigma):
                return m
        return ChainMap.zero(self.complex(tau), self.complex(sigma))

    def degrees(self) -> range:
        return range(min(c.lo for c in self.complexes), max(c.hi for c in self.complexes) + 1)

    def validate(self) -> "ComplexPresheaf":
        for (tau, sigma), m in self.restrictions:
            if m.src != self.complex(tau) or m.dst != self.complex(sigma):
                raise ShapeMismatch(f"restriction {tau}→{sigma} between the wrong complexes")
            m.validate()
        for tau, a, b, sigma in _faces_squares(self.nerve):
            left = self.restriction(a, sigma).compose(self.restriction(tau, a))
            right = self.restriction(b, sigma).compose(self.restriction(tau, b))
            if left != right:
                raise FunctorialityViolation(f"restrictions {tau}→{sigma} disagree",
                                             {"from": list(tau), "to": list(sigma)})
        return self

    def component(self, e: int) -> NervePresheaf:
        """The presheaf of degree-e terms."""
        dims = {f: self.complex(f).dim(e) for f in self.nerve.faces}
        res = {key: m.component(e) for key, m in self.restrictions}
        return NervePresheaf.build(self.nerve, self.field, dims, res, check=False)

    def vertical(self, c: int, e: int) -> Matrix:
        """⊕ over c-faces of the complex differentials d^e, unsigned."""
        return Matrix.direct_sum(self.field, [self.complex(f).d(e) for f in self.nerve.faces_of_dim(c)])


def hypercohomology(cp: ComplexPresheaf, sign: str = "vertical") -> Tuple[DoubleComplex, Dict[int, int]]:
    if sign not in ("vertical", "horizontal"):
        raise InvalidInput(f"unknown sign placement {sign!r}")
    f = cp.field
    top = cp.nerve.max_dim
    degs = list(cp.degrees())
    comps = {e: cp.component(e) for e in degs}
    dims, dh, dv = {}, {}, {}
    for c in range(top + 1):
        for e in degs:
            dims[(c, e)] = comps[e].cochain_dim(c)
    for c in range(top + 1):
        for e in degs:
            h = comps[e].coboundary(c) if c < top else None
            v = cp.vertical(c, e) if e < degs[-1] else None
            if sign == "vertical":
                if v is not None and c % 2:
                    v = -v
            elif h is not None and e % 2:
                h = -h
            if h is not None:
                dh[(c, e)] = h
            if v is not None:
                dv[(c, e)] = v
    dc = DoubleComplex.build(f, dims, dh, dv)
    tot = dc.total()
    out = {k: tot.cohomology(k).dim for k in dc.total_degrees()}
    LOGGER.debug("hypercohomology (%s signs): %s", sign, out)
    return dc, out


def globaxten_check(f: Sequence[Any], h: Sequence[Any], cp: ComplexPresheaf) -> bool:
    """∂*f = 0, δf = ∂*h and δh = 0 for f in C^{0,1} and h in C^{1,0}."""
    fld = cp.field
    c01, c10 = cp.component(1), cp.component(0)
    if len(f) != c01.cochain_dim(0):
        raise ShapeMismatch(f"f has length {len(f)}, expected {c01.cochain_dim(0)}")
    if len(h) != c10.cochain_dim(1):
        raise ShapeMismatch(f"h has length {len(h)}, expected {c10.cochain_dim(1)}")
    f, h = fld.vector(f), fld.vector(h)
    d_f = cp.vertical(0, 1).apply(f)
    delta_f = c01.coboundary(0).apply(f)
    d_h = cp.vertical(1, 0).apply(h)
    delta_h = c10.coboundary(1).apply(h)
    return vec_is_zero(d_f) and tuple(delta_f) == tuple(d_h) and vec_is_zero(delta_h)


def cohomology_presheaf(cp: ComplexPresheaf, k: int) -> NervePresheaf:
    dims = {f: cp.complex(f).cohomology(k).dim for f in cp.nerve.faces}
    res = {key: m.induced_on_cohomology(k) for key, m in cp.restrictions}
    return NervePresheaf.build(cp.nerve, cp.field, dims, res)


def vertex_space(presheaf: Any, q: int, k: Optional[int] = None) -> Tuple[int, Tuple[CechClass, ...]]:
    """H^q of a presheaf, or of the degree-k cohomology presheaf of a complex presheaf."""
    if isinstance(presheaf, ComplexPresheaf):
        if k is None:
            raise InvalidInput("a complex presheaf needs the cohomological degree k")
        presheaf = cohomology_presheaf(presheaf, k)
    if q < 0 or q > presheaf.nerve.max_dim:
        return 0, ()
    grp = cech_complex(presheaf).cohomology(q)
    return grp.dim, tuple(CechClass(presheaf, q, r) for r in grp.representatives)


# ------------------------- presheaf morphisms -------------------------

@dataclass(frozen=True)
class PresheafMorphism:
    src: NervePresheaf
    dst: NervePresheaf
    components: Tuple[Matrix, ...]

    def component(self, face: Face) -> Matrix:
        return self.components[self.src.nerve.faces.index(face)]

    def validate(self) -> "PresheafMorphism":
        for face, m in zip(self.src.nerve.faces, self.components):
            if m.shape != (self.dst.dim(face), self.src.dim(face)):
                raise ShapeMismatch(f"component at {face} has shape {m.shape}")
        for sigma in self.src.nerve.faces:
            for _, tau in codim_one(sigma):
                left = self.component(sigma) @ self.src.restriction(tau, sigma)
                right = self.dst.restriction(tau, sigma) @ self.component(tau)
                if left != right:
                    raise NotAMorphism(f"does not commute with the restriction {tau}→{sigma}",
                                       {"from": list(tau), "to": list(sigma)})
        return self

    def cech_map(self) -> ChainMap:
        src, dst = cech_complex(self.src), cech_complex(self.dst)
        comps = {q: Matrix.direct_sum(self.src.field, [self.component(f) for f in self.src.nerve.faces_of_dim(q)])
                 for q in src.degrees()}
        return ChainMap(src, dst, comps)


def _sub_presheaf(parent: NervePresheaf, spaces: Dict[Face, Subspace]) -> Tuple[NervePresheaf, PresheafMorphism]:
    f = parent.field
    dims = {face: spaces[face].dim for face in parent.nerve.faces}
    res = {}
    for (tau, sigma), m in parent.restrictions:
        cols = []
        for v in spaces[tau].vectors():
            c = spaces[sigma].coordinates(m.apply(v))
            if c is None:
                raise NotAMorphism(f"restriction {tau}→{sigma} leaves the subpresheaf")
            cols.append(c)
        res[(tau, sigma)] = Matrix.from_columns(f, cols, dims[sigma])
    sub = NervePresheaf.build(parent.nerve, f, dims, res, check=False)
    incl = tuple(
        Matrix.from_columns(f, spaces[face].vectors(), parent.dim(face)) for face in parent.nerve.faces
    )
    return sub, PresheafMorphism(sub, parent, incl)


def kernel_presheaf(phi: PresheafMorphism) -> Tuple[NervePresheaf, PresheafMorphism]:
    spaces = {face: kernel_basis(phi.component(face)) if phi.src.dim(face) else Subspace.zero(phi.src.field, 0)
              for face in phi.src.nerve.faces}
    return _sub_presheaf(phi.src, spaces)


def image_presheaf(phi: PresheafMorphism) -> Tuple[NervePresheaf, PresheafMorphism, PresheafMorphism]:
    """Im φ with the corestriction src → Im φ and the inclusion Im φ → dst."""
    f = phi.src.field
    spaces = {face: image_basis(phi.component(face)) for face in phi.src.nerve.faces}
    img, incl = _sub_presheaf(phi.dst, spaces)
    cores = []
    for face in phi.src.nerve.faces:
        m = phi.component(face)
        cols = [spaces[face].coordinates(c) for c in m.columns()]
        cores.append(Matrix.from_columns(f, cols, img.dim(face)))
    return img, PresheafMorphism(phi.src, img, tuple(cores)), incl


# ------------------------- vertex LES -------------------------

@dataclass(frozen=True)
class PointData:
    """Local data at one point: 0 → B → C → D → 0 and the source module F."""
    inject: ModuleMap
    project: ModuleMap
    source: AModule


@dataclass(frozen=True)
class VertexLes:
    kernel: NervePresheaf
    middle: NervePresheaf
    image: NervePresheaf
    les: LongExactSequence

    @property
    def exact(self) -> bool:
        return self.les.exact

    def to_json(self) -> Dict[str, Any]:
        return {"exact": self.exact, "rows": self.les.rows(), "defects": self.les.defects()}


def _point_presheaf(nerve: Nerve, field: Field, support: Sequence[Sequence[int]],
                    groups: Sequence[ExtGroup]) -> NervePresheaf:
    return skyscraper_presheaf(nerve, field, support, [g.dim for g in groups], point_count=len(groups))


def ext_presheaf_map(nerve: Nerve, support: Sequence[Sequence[int]], points: Sequence[PointData],
                     k: int, length: Optional[int] = None) -> PresheafMorphism:
    """β: Ext^k(F, C) → Ext^k(F, D) face by face."""
    field = points[0].source.field if points else Field(None)
    L = length if length is not None else k + 1
    src_groups, dst_groups, betas = [], [], []
    for pt in points:
        res = free_resolution(pt.source, L)
        src = ext_group(pt.source, pt.project.src, k, resolution=res)
        dst = ext_group(pt.source, pt.project.dst, k, resolution=res)
        src_groups.append(src)
        dst_groups.append(dst)
        betas.append(ext_map_covariant(src, dst, pt.project))
    P_src = _point_presheaf(nerve, field, support, src_groups)
    P_dst = _point_presheaf(nerve, field, support, dst_groups)
    comps = tuple(
        Matrix.direct_sum(field, [betas[x] for x in face_support(support, face)])
        if face_support(support, face) else Matrix.zeros(field, 0, 0)
        for face in nerve.faces
    )
    return PresheafMorphism(P_src, P_dst, comps).validate()


def presheaf_les(phi: PresheafMorphism) -> VertexLes:
    """LES of 0 → Ker φ → src → Im φ → 0 in Čech cohomology."""
    phi.validate()
    ker, ker_incl = kernel_presheaf(phi)
    img, cores, _ = image_presheaf(phi)
    ses = ShortExactSequence(ker_incl.cech_map(), cores.cech_map())
    return VertexLes(ker, phi.src, img, long_exact_sequence(ses))


def vertex_les(nerve: Nerve, support: Sequence[Sequence[int]], points: Sequence[PointData],
               k: int, length: Optional[int] = None) -> VertexLes:
    """…→ H^q(Ker β) → H^q(Ext^k(F, C)) → H^q(Im β) → H^{q+1}(Ker β) →…"""
    out = presheaf_les(ext_presheaf_map(nerve, support, points, k, length))
    LOGGER.debug("vertex LES exact: %s", out.exact)
    return out
