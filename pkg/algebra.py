# -*- coding: utf-8 -*-
"""
algebra.py
==========
Finite-dimensional commutative algebras, their modules, free resolutions and
Ext groups.

Layout conventions
------------------
- An algebra A of dimension n is stored through its left-multiplication
  matrices L_a (a over the basis), L_a e_b = Σ_k c_{abk} e_k.
- A free module A^s has basis (copy j, algebra basis t) at index j·n + t.
  A map A^s → N is determined by the images g_j of the units of the copies;
  the column (j, t) of its matrix is ρ_N(e_t)·g_j.
- Hom_A(A^s, G) is identified with G^s (values on the units); this is the
  cochain space of Ext computations, block j of length dim G.

API (main):
    free_resolution(m, length) -> FreeResolution
    ext_group(f, g, k, length) -> ExtGroup
    yoneda_product(a, b) -> ExtClass
    hom_space(f, g) -> HomSpace
"""

from __future__ import annotations

import logging
import random
import re
import threading
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cochain import CochainComplex, CohomologyGroup
from errors import (
    FieldMismatch, InvalidInput, LiftFailed, NotACocycle, NotAMorphism, ParseError,
    ShapeMismatch, TruncationTooShort,
)
from linalg import (
    Field, Matrix, Subspace, Vector, induced_on_quotient, kernel_basis, kron, rank, solve,
    unvec_col, vec_add, vec_col, vec_scale,
)

LOGGER = logging.getLogger(__name__)

DEFAULT_LENGTH = 4


# ------------------------- FinDimAlgebra -------------------------

@dataclass(frozen=True)
class FinDimAlgebra:
    field: Field
    dim: int
    unit: Vector
    mult: Tuple[Matrix, ...]
    name: str = ""

    @classmethod
    def from_structure_constants(cls, field: Field, consts: Sequence[Sequence[Sequence[Any]]],
                                 unit: Sequence[Any], name: str = "") -> "FinDimAlgebra":
        n = len(consts)
        mats = []
        for a in range(n):
            if len(consts[a]) != n or any(len(consts[a][b]) != n for b in range(n)):
                raise ShapeMismatch("structure constants must be dim x dim x dim")
            # column b of L_a is e_a·e_b
            mats.append(Matrix.from_columns(field, [field.vector(consts[a][b]) for b in range(n)], n)
                        if n else Matrix.zeros(field, 0, 0))
        alg = cls(field, n, field.vector(unit), tuple(mats), name)
        alg.validate()
        return alg

    def left(self, a: Sequence[Any]) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for c, L in zip(a, self.mult):
            if c != 0:
                out = out + L.scale(c)
        return out

    def multiply(self, a: Sequence[Any], b: Sequence[Any]) -> Vector:
        return self.left(a).apply(b)

    def basis_vector(self, t: int) -> Vector:
        return self.field.unit_vector(self.dim, t)

    def validate(self) -> "FinDimAlgebra":
        n, f = self.dim, self.field
        if len(self.unit) != n or len(self.mult) != n:
            raise ShapeMismatch("unit and multiplication table must match the dimension")
        for a in range(n):
            for b in range(n):
                if self.mult[a].column(b) != self.mult[b].column(a):
                    raise InvalidInput(f"not commutative on basis pair ({a}, {b})")
        for a in range(n):
            for b in range(n):
                if self.mult[a] @ self.mult[b] != self.left(self.mult[a].column(b)):
                    raise InvalidInput(f"not associative on basis pair ({a}, {b})")
        if self.left(self.unit) != Matrix.identity(f, n):
            raise InvalidInput("unit does not act as the identity")
        return self

    def to_json(self) -> Dict[str, Any]:
        n = self.dim
        return {
            "field": self.field.to_json(),
            "dim": n,
            "unit": [self.field.to_str(x) for x in self.unit],
            "mult": [[[self.field.to_str(x) for x in self.mult[a].column(b)] for b in range(n)] for a in range(n)],
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "FinDimAlgebra":
        if not isinstance(obj, dict):
            raise ParseError("algebra must be an object")
        if "builtin" in obj:
            if set(obj) - {"builtin", "field"}:
                raise ParseError(f"unknown algebra fields {sorted(set(obj) - {'builtin', 'field'})}")
            return builtin_algebra(obj["builtin"], Field.from_json(obj.get("field", "Q")))
        if set(obj) - {"field", "dim", "unit", "mult"}:
            raise ParseError(f"unknown algebra fields {sorted(set(obj) - {'field', 'dim', 'unit', 'mult'})}")
        f = Field.from_json(obj["field"])
        alg = cls.from_structure_constants(f, obj["mult"], obj["unit"])
        if alg.dim != int(obj.get("dim", alg.dim)):
            raise ShapeMismatch("dim does not match the structure constants")
        return alg


def field_algebra(field: Field) -> FinDimAlgebra:
    return FinDimAlgebra(field, 1, (field.one,), (Matrix.identity(field, 1),), "field")


def truncated_polynomial_algebra(field: Field, m: int) -> FinDimAlgebra:
    """k[x]/(x^m) on the monomial basis 1, x, …, x^{m-1}."""
    if m < 1:
        raise InvalidInput("k[x]/(x^m) needs m >= 1")
    shift = Matrix(field, m, m, tuple(field.one if i == j + 1 else field.zero for i in range(m) for j in range(m)))
    mats = tuple(shift.power(a) for a in range(m))
    name = "dual_numbers" if m == 2 else f"k[x]/(x^{m})"
    return FinDimAlgebra(field, m, field.unit_vector(m, 0), mats, name)


def dual_numbers(field: Field) -> FinDimAlgebra:
    return truncated_polynomial_algebra(field, 2)


def product_of_points(field: Field, r: int) -> FinDimAlgebra:
    """k × … × k on the idempotent basis."""
    mats = tuple(
        Matrix(field, r, r, tuple(field.one if i == j == a else field.zero for i in range(r) for j in range(r)))
        for a in range(r)
    )
    return FinDimAlgebra(field, r, (field.one,) * r, mats, f"product_of_points:{r}")


_TRUNC_RE = re.compile(r"^k\[x\]/\(x\^(\d+)\)$")
_POINTS_RE = re.compile(r"^product[_ ]of[_ ]points(?::(\d+))?$")


def builtin_algebra(name: str, field: Field) -> FinDimAlgebra:
    name = str(name).strip()
    if name == "field":
        return field_algebra(field)
    if name == "dual_numbers":
        return dual_numbers(field)
    m = _TRUNC_RE.match(name)
    if m:
        return truncated_polynomial_algebra(field, int(m.group(1)))
    m = _POINTS_RE.match(name)
    if m:
        return product_of_points(field, int(m.group(1) or 2))
    raise ParseError(f"unknown built-in algebra {name!r}")


BUILTIN_NAMES = ("field", "dual_numbers", "k[x]/(x^3)", "product_of_points:2")


# ------------------------- AModule -------------------------

@dataclass(frozen=True)
class AModule:
    algebra: FinDimAlgebra
    dim: int
    action: Tuple[Matrix, ...]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def validate(self) -> "AModule":
        A, f = self.algebra, self.algebra.field
        if len(self.action) != A.dim:
            raise ShapeMismatch("one action matrix per algebra basis element is required")
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise ShapeMismatch(f"action matrices must be {self.dim}x{self.dim}")
            if m.field != f:
                raise FieldMismatch("action over the wrong field")
        for a in range(A.dim):
            for b in range(A.dim):
                prod = self.action[a] @ self.action[b]
                if prod != self.act(A.mult[a].column(b)):
                    raise InvalidInput(f"action does not respect multiplication on ({a}, {b})")
                if prod != self.action[b] @ self.action[a]:
                    raise InvalidInput("action matrices do not commute")
        if self.act(A.unit) != Matrix.identity(f, self.dim):
            raise InvalidInput("unit does not act as the identity")
        return self

    def act(self, a: Sequence[Any]) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for c, m in zip(a, self.action):
            if c != 0:
                out = out + m.scale(c)
        return out

    def span(self, vectors: Sequence[Sequence[Any]]) -> Subspace:
        """A-submodule generated by ``vectors`` as a subspace."""
        vecs = [m.apply(v) for v in vectors for m in self.action]
        return Subspace.span(self.field, self.dim, vecs)

    def is_submodule(self, sub: Subspace) -> bool:
        return all(sub.contains(m.apply(v)) for v in sub.vectors() for m in self.action)

    def to_json(self) -> Dict[str, Any]:
        return {"dim": self.dim, "action": [m.to_json() for m in self.action]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any], algebra: FinDimAlgebra) -> "AModule":
        if not isinstance(obj, dict):
            raise ParseError("module must be an object")
        if "free" in obj:
            if set(obj) != {"free"}:
                raise ParseError("free module object takes only 'free'")
            return free_module(algebra, int(obj["free"]))
        if "residue" in obj:
            if set(obj) != {"residue"}:
                raise ParseError("residue module object takes only 'residue'")
            return residue_module(algebra, int(obj["residue"]))
        if set(obj) - {"dim", "action"} or "action" not in obj:
            raise ParseError("module object is {\"dim\", \"action\"}")
        acts = tuple(Matrix.from_json(m, algebra.field) for m in obj["action"])
        dim = int(obj.get("dim", acts[0].rows if acts else 0))
        return cls(algebra, dim, acts).validate()


def free_module(A: FinDimAlgebra, r: int) -> AModule:
    return AModule(A, A.dim * r, tuple(Matrix.direct_sum(A.field, [L] * r) for L in A.mult))


def zero_module(A: FinDimAlgebra) -> AModule:
    return AModule(A, 0, tuple(Matrix.zeros(A.field, 0, 0) for _ in range(A.dim)))


def is_free(M: AModule) -> bool:
    A = M.algebra
    if A.dim == 0 or M.dim % A.dim:
        return False
    return M.action == free_module(A, M.dim // A.dim).action


# ------------------------- ModuleMap -------------------------

@dataclass(frozen=True)
class ModuleMap:
    src: AModule
    dst: AModule
    matrix: Matrix

    def validate(self) -> "ModuleMap":
        if self.matrix.shape != (self.dst.dim, self.src.dim):
            raise ShapeMismatch(f"module map must be {self.dst.dim}x{self.src.dim}")
        for a, b in zip(self.src.action, self.dst.action):
            if self.matrix @ a != b @ self.matrix:
                raise NotAMorphism("matrix is not equivariant")
        return self

    @classmethod
    def identity(cls, M: AModule) -> "ModuleMap":
        return cls(M, M, Matrix.identity(M.field, M.dim))

    @classmethod
    def zero(cls, src: AModule, dst: AModule) -> "ModuleMap":
        return cls(src, dst, Matrix.zeros(src.field, dst.dim, src.dim))

    def __call__(self, v: Sequence[Any]) -> Vector:
        return self.matrix.apply(v)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.src, self.dst, self.matrix @ other.matrix)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix + other.matrix)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix - other.matrix)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.src, self.dst, self.matrix.scale(c))

    def is_injective(self) -> bool:
        return rank(self.matrix) == self.src.dim

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.dst.dim

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def to_json(self) -> Dict[str, Any]:
        return self.matrix.to_json()


# ------------------------- sub, quotient, sums -------------------------

def submodule(M: AModule, vectors: Sequence[Sequence[Any]]) -> Tuple[AModule, ModuleMap]:
    """Submodule generated by ``vectors`` with its inclusion."""
    return submodule_of_subspace(M, M.span(vectors) if vectors else Subspace.zero(M.field, M.dim))


def submodule_of_subspace(M: AModule, W: Subspace) -> Tuple[AModule, ModuleMap]:
    if not M.is_submodule(W):
        raise InvalidInput("subspace is not stable under the action")
    f = M.field
    basis = W.vectors()
    acts = []
    for m in M.action:
        cols = [W.coordinates(m.apply(w)) for w in basis]
        acts.append(Matrix.from_columns(f, cols, W.dim) if cols else Matrix.zeros(f, 0, 0))
    S = AModule(M.algebra, W.dim, tuple(acts))
    incl = Matrix.from_columns(f, basis, M.dim) if basis else Matrix.zeros(f, M.dim, 0)
    return S, ModuleMap(S, M, incl)


def quotient_module(M: AModule, W: Subspace) -> Tuple[AModule, ModuleMap]:
    """M/W on the canonical complement basis, with the projection."""
    if not M.is_submodule(W):
        raise InvalidInput("subspace is not stable under the action")
    f = M.field
    acts = tuple(induced_on_quotient(m, W, W) for m in M.action)
    Q = AModule(M.algebra, W.codim, acts)
    cols = [W.quotient_coordinates(f.unit_vector(M.dim, j)) for j in range(M.dim)]
    proj = Matrix.from_columns(f, cols, W.codim) if cols else Matrix.zeros(f, W.codim, 0)
    return Q, ModuleMap(M, Q, proj)


def residue_module(A: FinDimAlgebra, power: int = 1) -> AModule:
    """A/(x^power) for truncated algebras; A/rad for the field."""
    if A.dim <= power:
        return free_module(A, 1)
    R = free_module(A, 1)
    ideal = Subspace.span(A.field, A.dim, [A.basis_vector(t) for t in range(power, A.dim)])
    return quotient_module(R, ideal)[0]


def point_module(A: FinDimAlgebra, i: int) -> AModule:
    """The i-th residue field of a product of points."""
    R = free_module(A, 1)
    ideal = Subspace.span(A.field, A.dim, [A.basis_vector(t) for t in range(A.dim) if t != i])
    return quotient_module(R, ideal)[0]


@dataclass(frozen=True)
class DirectSum:
    module: AModule
    injections: Tuple[ModuleMap, ...]
    projections: Tuple[ModuleMap, ...]


def direct_sum(modules: Sequence[AModule]) -> DirectSum:
    A = modules[0].algebra
    f = A.field
    acts = tuple(Matrix.direct_sum(f, [M.action[t] for M in modules]) for t in range(A.dim))
    S = AModule(A, sum(M.dim for M in modules), acts)
    injs, projs, off = [], [], 0
    for M in modules:
        inj = Matrix(f, S.dim, M.dim, tuple(
            f.one if i == off + j else f.zero for i in range(S.dim) for j in range(M.dim)))
        injs.append(ModuleMap(M, S, inj))
        projs.append(ModuleMap(S, M, inj.transpose()))
        off += M.dim
    return DirectSum(S, tuple(injs), tuple(projs))


def kernel(phi: ModuleMap) -> Tuple[AModule, ModuleMap]:
    return submodule_of_subspace(phi.src, kernel_basis(phi.matrix))


def cokernel(phi: ModuleMap) -> Tuple[AModule, ModuleMap]:
    im = Subspace.span(phi.dst.field, phi.dst.dim, phi.matrix.columns())
    return quotient_module(phi.dst, im)


def random_module(A: FinDimAlgebra, rng: random.Random, max_rank: int = 2, max_dim: int = 3) -> AModule:
    """A random quotient of a small free module, of dimension at most ``max_dim``."""
    f = A.field
    while True:
        r = rng.randint(1, max_rank)
        F = free_module(A, r)
        relations = [tuple(f.random_element(rng) for _ in range(F.dim)) for _ in range(rng.randint(0, F.dim))]
        M = quotient_module(F, F.span(relations) if relations else Subspace.zero(f, F.dim))[0]
        if M.dim <= max_dim:
            return M


# ------------------------- Hom spaces -------------------------

@dataclass(frozen=True)
class HomSpace:
    src: AModule
    dst: AModule
    basis: Tuple[ModuleMap, ...]
    solution_space: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, phi: ModuleMap) -> Vector:
        v = vec_col(phi.matrix)
        c = self.solution_space.coordinates(v)
        if c is None:
            raise NotAMorphism("matrix is not a module map")
        return c

    def combination(self, coords: Sequence[Any]) -> ModuleMap:
        out = ModuleMap.zero(self.src, self.dst)
        for c, b in zip(coords, self.basis):
            out = out + b.scale(c)
        return out


def equivariance_system(F: AModule, G: AModule) -> Matrix:
    """Rows of ρ_G(a)X − Xρ_F(a) = 0 on vec(X), column-major."""
    f = F.field
    blocks = [
        kron(Matrix.identity(f, F.dim), g) - kron(a.transpose(), Matrix.identity(f, G.dim))
        for a, g in zip(F.action, G.action)
    ]
    return Matrix.vstack(f, blocks, cols=F.dim * G.dim)


def hom_space(f: AModule, g: AModule) -> HomSpace:
    if f.algebra != g.algebra:
        raise FieldMismatch("modules over different algebras")
    n = f.dim * g.dim
    sol = kernel_basis(equivariance_system(f, g)) if n else Subspace.zero(f.field, 0)
    basis = tuple(ModuleMap(f, g, unvec_col(f.field, v, g.dim, f.dim)) for v in sol.vectors())
    return HomSpace(f, g, basis, sol)


# ------------------------- free maps and resolutions -------------------------

def free_map(A: FinDimAlgebra, N: AModule, gens: Sequence[Sequence[Any]]) -> ModuleMap:
    """A^s → N sending the unit of copy j to gens[j]."""
    f = A.field
    cols = [N.action[t].apply(g) for g in gens for t in range(A.dim)]
    P = free_module(A, len(gens))
    mat = Matrix.from_columns(f, cols, N.dim) if cols else Matrix.zeros(f, N.dim, 0)
    return ModuleMap(P, N, mat)


def generator_images(phi: ModuleMap, A: FinDimAlgebra) -> List[Vector]:
    """Images of the copy units under a map out of a free module."""
    s = phi.src.dim // A.dim if A.dim else 0
    u = A.unit
    out = []
    for j in range(s):
        v = [A.field.zero] * phi.src.dim
        v[j * A.dim:(j + 1) * A.dim] = list(u)
        out.append(phi(v))
    return out


def element_in_copy(A: FinDimAlgebra, v: Sequence[Any], j: int) -> Vector:
    return tuple(v[j * A.dim:(j + 1) * A.dim])


def minimal_generators(N: AModule, K: Subspace) -> List[Vector]:
    """Deterministic generating set of the submodule K of N.

    Candidates are the echelon basis vectors of K; a candidate not yet
    covered is merged into an existing generator whenever that keeps the
    generated submodule equal to the enlarged one, else it is appended.
    """
    gens: List[Vector] = []
    covered = Subspace.zero(N.field, N.dim)
    for v in K.vectors():
        if covered.contains(v):
            continue
        target = covered.sum(N.span([v]))
        for j in range(len(gens)):
            trial = gens[:j] + [vec_add(gens[j], v)] + gens[j + 1:]
            if N.span(trial) == target:
                gens = trial
                break
        else:
            gens.append(v)
        covered = N.span(gens)
    return gens


@dataclass(frozen=True)
class FreeResolution:
    module: AModule
    length: int
    terms: Tuple[AModule, ...]
    diffs: Tuple[ModuleMap, ...]
    augmentation: ModuleMap
    canonical: bool = True

    @property
    def algebra(self) -> FinDimAlgebra:
        return self.module.algebra

    @property
    def ranks(self) -> Tuple[int, ...]:
        d = self.algebra.dim
        return tuple(P.dim // d for P in self.terms)

    def term(self, i: int) -> AModule:
        return self.terms[i]

    def d(self, i: int) -> ModuleMap:
        """d_i: P_i → P_{i-1} for 1 ≤ i ≤ length; d_0 is the augmentation."""
        if i == 0:
            return self.augmentation
        return self.diffs[i - 1]

    def generator_image(self, i: int, l: int) -> Vector:
        return generator_images(self.d(i), self.algebra)[l]

    def validate(self) -> "FreeResolution":
        if not self.augmentation.is_surjective():
            raise InvalidInput("augmentation is not surjective")
        prev = self.augmentation
        for i in range(1, self.length + 1):
            d = self.d(i)
            if not (prev.matrix @ d.matrix).is_zero():
                raise InvalidInput(f"d_{i - 1} ∘ d_{i} ≠ 0")
            if kernel_basis(prev.matrix) != Subspace.span(self.algebra.field, prev.src.dim, d.matrix.columns()):
                raise InvalidInput(f"not exact at P_{i - 1}")
            prev = d
        return self

    def as_complex(self) -> CochainComplex:
        """P as a cochain complex: P^{-i} = P_i as vector spaces."""
        L = self.length
        dims = [self.terms[L - k].dim for k in range(L + 1)]
        diffs = [self.d(L - k).matrix for k in range(L)]
        return CochainComplex.build(self.algebra.field, -L, dims, diffs)

    def to_json(self) -> Dict[str, Any]:
        return {"length": self.length, "ranks": list(self.ranks),
                "differentials": [d.matrix.to_json() for d in self.diffs],
                "augmentation": self.augmentation.matrix.to_json()}


_RESOLUTION_CACHE: Dict[Tuple[AModule, int], FreeResolution] = {}
_RESOLUTION_LOCK = threading.Lock()


def _extend(A: FinDimAlgebra, module: AModule, augmentation: ModuleMap, length: int,
            canonical: bool) -> FreeResolution:
    terms = [augmentation.src]
    diffs: List[ModuleMap] = []
    prev = augmentation
    for i in range(1, length + 1):
        K = kernel_basis(prev.matrix) if prev.src.dim else Subspace.zero(A.field, 0)
        gens = minimal_generators(prev.src, K)
        d = free_map(A, prev.src, gens)
        diffs.append(d)
        terms.append(d.src)
        prev = d
    res = FreeResolution(module, length, tuple(terms), tuple(diffs), augmentation, canonical)
    LOGGER.debug("resolution of a %d-dim module: ranks %s", module.dim, res.ranks)
    return res


def free_resolution(m: AModule, length: int = DEFAULT_LENGTH) -> FreeResolution:
    if length < 0:
        raise InvalidInput("resolution length must be >= 0")
    key = (m, length)
    with _RESOLUTION_LOCK:
        hit = _RESOLUTION_CACHE.get(key)
    if hit is not None:
        return hit
    A = m.algebra
    eps = free_map(A, m, minimal_generators(m, Subspace.full(m.field, m.dim)))
    res = _extend(A, m, eps, length, canonical=True)
    with _RESOLUTION_LOCK:
        _RESOLUTION_CACHE.setdefault(key, res)
    return res


def resolve_from(augmentation: ModuleMap, length: int) -> FreeResolution:
    """Resolution starting from a user-supplied surjection A^s → M."""
    if not augmentation.is_surjective():
        raise InvalidInput("augmentation is not surjective")
    A = augmentation.dst.algebra
    return _extend(A, augmentation.dst, augmentation, length, canonical=False)


def clear_resolution_cache() -> None:
    with _RESOLUTION_LOCK:
        _RESOLUTION_CACHE.clear()


# ------------------------- Ext -------------------------

def hom_into(res: FreeResolution, G: AModule, k: int) -> Matrix:
    """δ^k: Hom(P_k, G) → Hom(P_{k+1}, G) on G^{s_k} → G^{s_{k+1}}."""
    A = res.algebra
    f = A.field
    s_k = res.ranks[k]
    s_k1 = res.ranks[k + 1] if k + 1 <= res.length else 0
    rows = []
    for l in range(s_k1):
        g_img = res.generator_image(k + 1, l)
        row = [G.act(element_in_copy(A, g_img, j)) for j in range(s_k)]
        rows.append(row)
    return Matrix.block(f, rows, [G.dim] * s_k1, [G.dim] * s_k) if s_k1 else Matrix.zeros(f, 0, G.dim * s_k)


def module_hom_complex(res: FreeResolution, G: AModule) -> CochainComplex:
    """Hom_A(P_•, G) in degrees 0..length."""
    L = res.length
    dims = [G.dim * res.ranks[k] for k in range(L + 1)]
    diffs = [hom_into(res, G, k) for k in range(L)]
    return CochainComplex.build(res.algebra.field, 0, dims, diffs)


@dataclass(frozen=True)
class ExtGroup:
    source: AModule
    target: AModule
    degree: int
    resolution: FreeResolution
    complex: CochainComplex
    group: CohomologyGroup

    @property
    def dim(self) -> int:
        return self.group.dim

    @property
    def basis(self) -> Tuple[Vector, ...]:
        return self.group.representatives

    @property
    def field(self) -> Field:
        return self.source.field

    def is_cocycle(self, v: Sequence[Any]) -> bool:
        return self.group.cycles.contains(v)

    def is_zero(self, v: Sequence[Any]) -> bool:
        return self.group.is_zero_class(v)

    def coordinates(self, v: Sequence[Any]) -> Vector:
        return self.group.coordinates(v)

    def class_vector(self, coords: Sequence[Any]) -> Vector:
        return self.group.class_vector(coords)

    def element(self, coords: Sequence[Any]) -> "ExtClass":
        return ExtClass(self, self.class_vector(self.field.vector(coords)))

    def generator(self, j: int = 0) -> "ExtClass":
        return ExtClass(self, self.basis[j])

    def zero(self) -> "ExtClass":
        return ExtClass(self, self.field.zero_vector(self.complex.dim(self.degree)))

    def cocycle_as_map(self, v: Sequence[Any]) -> ModuleMap:
        """The A-linear map P_k → G with the given values on the copy units."""
        G = self.target
        gens = [tuple(v[j * G.dim:(j + 1) * G.dim]) for j in range(self.resolution.ranks[self.degree])]
        return free_map(self.resolution.algebra, G, gens)


@dataclass(frozen=True)
class ExtClass:
    group: ExtGroup
    cocycle: Vector

    def __post_init__(self):
        if not self.group.is_cocycle(self.cocycle):
            raise NotACocycle(f"not a cocycle of Ext^{self.group.degree}")

    @property
    def degree(self) -> int:
        return self.group.degree

    def coordinates(self) -> Vector:
        return self.group.coordinates(self.cocycle)

    def is_zero(self) -> bool:
        return self.group.is_zero(self.cocycle)

    def __add__(self, other: "ExtClass") -> "ExtClass":
        return ExtClass(self.group, vec_add(self.cocycle, other.cocycle))

    def scale(self, c) -> "ExtClass":
        return ExtClass(self.group, vec_scale(self.group.field.element(c), self.cocycle))

    def same_class(self, other: "ExtClass") -> bool:
        return self.coordinates() == other.coordinates()


def ext_group(f: AModule, g: AModule, k: int, length: Optional[int] = None,
              resolution: Optional[FreeResolution] = None) -> ExtGroup:
    if k < 0:
        raise InvalidInput("Ext degree must be >= 0")
    if f.algebra != g.algebra:
        raise FieldMismatch("modules over different algebras")
    res = resolution if resolution is not None else free_resolution(f, length if length is not None else k + 1)
    if k >= res.length:
        raise TruncationTooShort(f"Ext^{k} needs a resolution of length > {k}, got {res.length}",
                                 {"degree": k, "length": res.length})
    cx = module_hom_complex(res, g)
    grp = cx.cohomology(k)
    LOGGER.debug("Ext^%d: dim %d (resolution ranks %s)", k, grp.dim, res.ranks)
    return ExtGroup(f, g, k, res, cx, grp)


def ext_dims(f: AModule, g: AModule, upto: int) -> List[int]:
    res = free_resolution(f, upto + 1)
    return [ext_group(f, g, k, resolution=res).dim for k in range(upto + 1)]


# ------------------------- lifting and Yoneda -------------------------

def lift_to_chain_map(src_res: FreeResolution, shift: int, cocycle_map: ModuleMap,
                      dst_res: FreeResolution, upto: int) -> List[ModuleMap]:
    """χ_i: P_{shift+i}(src) → Q_i(dst) for i = 0..upto with ε χ_0 = cocycle_map."""
    A = src_res.algebra
    chi: List[ModuleMap] = []
    for i in range(upto + 1):
        if shift + i > src_res.length:
            raise TruncationTooShort(f"source resolution too short for degree {shift + i}")
        if i > dst_res.length:
            raise TruncationTooShort(f"target resolution too short for degree {i}")
        P = src_res.term(shift + i)
        target = dst_res.d(i)
        gens = []
        for l in range(P.dim // A.dim if A.dim else 0):
            unit = [A.field.zero] * P.dim
            unit[l * A.dim:(l + 1) * A.dim] = list(A.unit)
            if i == 0:
                y = cocycle_map(unit)
            else:
                y = chi[i - 1](src_res.d(shift + i)(unit))
            x = solve(target.matrix, y)
            if x is None:
                raise LiftFailed(f"cannot lift generator {l} in stage {i}")
            gens.append(x)
        chi.append(ModuleMap(P, target.src, free_map(A, target.src, gens).matrix))
    return chi


def yoneda_product(a: ExtClass, b: ExtClass, resolution: Optional[FreeResolution] = None) -> ExtClass:
    """a ∈ Ext^m(F, G), b ∈ Ext^n(G, H) ↦ b ⋆ a ∈ Ext^{m+n}(F, H)."""
    F, G, H = a.group.source, a.group.target, b.group.target
    if b.group.source != G:
        raise InvalidInput("Yoneda product needs matching middle modules")
    m, n = a.degree, b.degree
    res_F = resolution or a.group.resolution
    if res_F.length < m + n + 1:
        if not res_F.canonical:
            raise TruncationTooShort(f"resolution of the source needs length {m + n + 1}")
        res_F = free_resolution(F, m + n + 1)
    res_G = b.group.resolution
    chi = lift_to_chain_map(res_F, m, a.group.cocycle_as_map(a.cocycle), res_G, n)
    psi = b.group.cocycle_as_map(b.cocycle)
    target = ext_group(F, H, m + n, resolution=res_F)
    vals: List[Any] = []
    for v in generator_images(psi.compose(chi[n]), F.algebra):
        vals.extend(v)
    return ExtClass(target, tuple(vals))


def ext_map_covariant(src: ExtGroup, dst: ExtGroup, h: ModuleMap) -> Matrix:
    """h_*: Ext^k(F, G) → Ext^k(F, G') for h: G → G'."""
    G, G2 = src.target, dst.target
    f = src.field
    cols = []
    for v in src.basis:
        img: List[Any] = []
        for j in range(src.resolution.ranks[src.degree]):
            img.extend(h(v[j * G.dim:(j + 1) * G.dim]))
        cols.append(dst.coordinates(tuple(img)))
    return Matrix.from_columns(f, cols, dst.dim) if cols else Matrix.zeros(f, dst.dim, 0)


def ext_map_contravariant(src: ExtGroup, dst: ExtGroup, h: ModuleMap) -> Matrix:
    """h^*: Ext^k(F, G) → Ext^k(F', G) for h: F' → F."""
    k = src.degree
    f = src.field
    chi = lift_to_chain_map(dst.resolution, 0, h.compose(dst.resolution.augmentation), src.resolution, k)
    cols = []
    for v in src.basis:
        phi = src.cocycle_as_map(v)
        img: List[Any] = []
        for w in generator_images(phi.compose(chi[k]), src.resolution.algebra):
            img.extend(w)
        cols.append(dst.coordinates(tuple(img)))
    return Matrix.from_columns(f, cols, dst.dim) if cols else Matrix.zeros(f, dst.dim, 0)


def ext0_to_module_map(group: ExtGroup, v: Sequence[Any]) -> ModuleMap:
    """The module map F → G whose composite with the augmentation is the cocycle."""
    if group.degree != 0:
        raise InvalidInput("only degree-0 classes are module maps")
    F, G = group.source, group.target
    eps = group.resolution.augmentation
    phi = group.cocycle_as_map(v)
    cols = []
    for j in range(F.dim):
        y = solve(eps.matrix, F.field.unit_vector(F.dim, j))
        cols.append(phi(y))
    mat = Matrix.from_columns(F.field, cols, G.dim) if cols else Matrix.zeros(F.field, G.dim, 0)
    return ModuleMap(F, G, mat)


def module_map_to_ext0(group: ExtGroup, psi: ModuleMap) -> ExtClass:
    vals: List[Any] = []
    for g in generator_images(group.resolution.augmentation, group.resolution.algebra):
        vals.extend(psi(g))
    return ExtClass(group, tuple(vals))


def random_module_map(src: AModule, dst: AModule, rng: random.Random) -> ModuleMap:
    """A random element of Hom_A(src, dst)."""
    hs = hom_space(src, dst)
    return hs.combination([src.field.random_element(rng) for _ in range(hs.dim)])
