# -*- coding: utf-8 -*-
"""
strings.py
==========
Strings between modules as extensions.

- ``Extension1``: a short exact sequence 0 → G → H → F → 0 of A-modules.
- ``ExtensionP``: a splice S_p ⋆ … ⋆ S_1 of such sequences,
  0 → G → H_{p-1} → … → H_0 → F → 0; ``splices[0]`` is S_1 (it ends at F).
- Pullback, pushout, Baer sum, equivalence by a linear solve for the middle
  isomorphism, the class of a splice in Ext^p(F, G) and its inverse
  construction from a cocycle.
- Obstruction classes for extending a string over a larger module and for
  lifting it through a quotient, with witnesses when they vanish.
- Long exact Ext sequences of a short exact sequence in either variable.

Classes are computed by lifting the augmentation of a free resolution of F
through the splice one generator at a time; ``algebra.yoneda_product`` gives
the same classes without signs.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from algebra import (
    AModule, ExtClass, ExtGroup, FinDimAlgebra, FreeResolution, ModuleMap, direct_sum,
    equivariance_system, ext_group, ext_map_contravariant, ext_map_covariant, ext0_to_module_map,
    free_map, free_module, free_resolution, generator_images, hom_space, is_free,
    module_hom_complex, quotient_module, random_module, resolve_from,
    submodule_of_subspace, yoneda_product,
)
from cochain import ChainMap, LongExactSequence, ShortExactSequence, assemble_les, connecting_map
from errors import InvalidInput, LiftFailed, NotACocycle, NotExact, ParseError
from linalg import (
    Field, Matrix, Subspace, image_basis, induced_on_quotient, kernel_basis, kron, rank, solve, unvec_col,
    vec_col,
)

LOGGER = logging.getLogger(__name__)

COVARIANT = "CovariantFromF"
CONTRAVARIANT = "ContravariantToG"
SIDES = (COVARIANT, CONTRAVARIANT)


def _from_columns(field: Field, cols: Sequence[Sequence[Any]], rows: int) -> Matrix:
    return Matrix.from_columns(field, cols, rows) if cols else Matrix.zeros(field, rows, 0)


def solve_module_map(src: AModule, dst: AModule,
                     conditions: Sequence[Tuple[Optional[Matrix], Optional[Matrix], Matrix]]
                     ) -> Optional[ModuleMap]:
    """A module map X: src → dst with L·X·R = T for every (L, R, T), or None.

    ``None`` for L or R stands for the identity.
    """
    f = src.field
    n = src.dim * dst.dim
    blocks = [equivariance_system(src, dst)] if n else []
    rhs: List[Any] = [f.zero] * sum(b.rows for b in blocks)
    for L, R, T in conditions:
        L = L if L is not None else Matrix.identity(f, dst.dim)
        R = R if R is not None else Matrix.identity(f, src.dim)
        blocks.append(kron(R.transpose(), L))
        rhs.extend(vec_col(T))
    x = solve(Matrix.vstack(f, blocks, cols=n), rhs)
    if x is None:
        return None
    return ModuleMap(src, dst, unvec_col(f, x, dst.dim, src.dim))


# ------------------------- Extension1 -------------------------

@dataclass(frozen=True)
class Extension1:
    """0 → g_module --inject--> middle --project--> f_module → 0."""
    g_module: AModule
    f_module: AModule
    middle: AModule
    inject: ModuleMap
    project: ModuleMap

    @property
    def algebra(self) -> FinDimAlgebra:
        return self.middle.algebra

    @property
    def field(self) -> Field:
        return self.middle.field

    def validate(self) -> "Extension1":
        if (self.inject.src, self.inject.dst) != (self.g_module, self.middle):
            raise NotExact("inject must go from the submodule to the middle")
        if (self.project.src, self.project.dst) != (self.middle, self.f_module):
            raise NotExact("project must go from the middle to the quotient")
        self.inject.validate()
        self.project.validate()
        if self.g_module.dim + self.f_module.dim != self.middle.dim:
            raise NotExact("dimensions do not add up",
                           {"g": self.g_module.dim, "middle": self.middle.dim, "f": self.f_module.dim})
        if not self.inject.is_injective():
            raise NotExact("inject is not injective")
        if not self.project.is_surjective():
            raise NotExact("project is not surjective")
        if not (self.project.matrix @ self.inject.matrix).is_zero():
            raise NotExact("project ∘ inject ≠ 0")
        return self

    def as_splice(self) -> "ExtensionP":
        return ExtensionP((self,))

    def to_json(self) -> Dict[str, Any]:
        return {
            "g_module": self.g_module.to_json(),
            "middle": self.middle.to_json(),
            "f_module": self.f_module.to_json(),
            "inject": self.inject.to_json(),
            "project": self.project.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any], algebra: FinDimAlgebra) -> "Extension1":
        """Full form, or ``{"module": M, "sub": [vectors]}`` for 0 → W → M → M/W → 0."""
        if not isinstance(obj, dict):
            raise ParseError("an extension must be an object")
        if "module" in obj:
            if set(obj) - {"module", "sub"}:
                raise ParseError(f"unknown extension fields {sorted(set(obj) - {'module', 'sub'})}")
            M = AModule.from_json(obj["module"], algebra)
            vecs = [algebra.field.vector(v) for v in obj.get("sub", [])]
            return ses_of_submodule(M, M.span(vecs) if vecs else Subspace.zero(algebra.field, M.dim))
        keys = {"g_module", "middle", "f_module", "inject", "project"}
        if set(obj) != keys:
            raise ParseError(f"an extension needs exactly the fields {sorted(keys)}")
        G = AModule.from_json(obj["g_module"], algebra)
        H = AModule.from_json(obj["middle"], algebra)
        F = AModule.from_json(obj["f_module"], algebra)
        inj = ModuleMap(G, H, Matrix.from_json(obj["inject"], algebra.field))
        proj = ModuleMap(H, F, Matrix.from_json(obj["project"], algebra.field))
        return cls(G, F, H, inj, proj).validate()


def ses_of_submodule(M: AModule, W: Subspace) -> Extension1:
    S, incl = submodule_of_subspace(M, W)
    Q, proj = quotient_module(M, W)
    return Extension1(S, Q, M, incl, proj).validate()


def split_extension(G: AModule, F: AModule) -> Extension1:
    ds = direct_sum([G, F])
    return Extension1(G, F, ds.module, ds.injections[0], ds.projections[1])


def nonsplit_dual_numbers(A: FinDimAlgebra) -> Extension1:
    """0 → k → A → k → 0 with 1 ↦ x, for A = k[x]/(x^2)."""
    if A.dim != 2:
        raise InvalidInput("the dual-numbers extension needs a two-dimensional algebra")
    R = free_module(A, 1)
    return ses_of_submodule(R, R.span([A.basis_vector(1)]))


def random_extension(A: FinDimAlgebra, rng: random.Random, max_dim: int = 3) -> Extension1:
    """A random submodule sequence inside a small random module."""
    M = random_module(A, rng, max_dim=max_dim)
    f = A.field
    vecs = [tuple(f.random_element(rng) for _ in range(M.dim)) for _ in range(rng.randint(0, 2))]
    return ses_of_submodule(M, M.span(vecs) if vecs else Subspace.zero(f, M.dim))


def is_split(s: Extension1) -> bool:
    """True when inject admits an A-linear retraction."""
    r = solve_module_map(s.middle, s.g_module,
                         [(None, s.inject.matrix, Matrix.identity(s.field, s.g_module.dim))])
    return r is not None


# ------------------------- pullback and pushout -------------------------

def pullback_ext(s: Extension1, gamma: ModuleMap) -> Extension1:
    """Sγ for γ: F' → F; middle is the fibre product {(f', h) : γ(f') = project(h)}."""
    if gamma.dst != s.f_module:
        raise InvalidInput("γ must land in the quotient of the extension")
    f = s.field
    F2 = gamma.src
    ds = direct_sum([F2, s.middle])
    total = Matrix.hstack(f, [gamma.matrix, -s.project.matrix], rows=s.f_module.dim)
    W = kernel_basis(total) if total.rows else Subspace.full(f, ds.module.dim)
    P, incl = submodule_of_subspace(ds.module, W)
    project = ds.projections[0].compose(incl)
    cols = [W.coordinates(ds.injections[1](s.inject(e))) for e in _unit_vectors(f, s.g_module.dim)]
    inject = ModuleMap(s.g_module, P, _from_columns(f, cols, P.dim))
    return Extension1(s.g_module, F2, P, inject, project).validate()


def pushout_ext(s: Extension1, alpha: ModuleMap) -> Extension1:
    """αS for α: G → G'; middle is (H ⊕ G') / {(inject g, −α g)}."""
    if alpha.src != s.g_module:
        raise InvalidInput("α must start at the submodule of the extension")
    f = s.field
    G2 = alpha.dst
    ds = direct_sum([s.middle, G2])
    rel = Matrix.vstack(f, [s.inject.matrix, -alpha.matrix], cols=s.g_module.dim)
    W = image_basis(rel) if rel.rows else Subspace.zero(f, 0)
    Q, proj = quotient_module(ds.module, W)
    inject = proj.compose(ds.injections[1])
    legs = Matrix.hstack(f, [s.project.matrix, Matrix.zeros(f, s.f_module.dim, G2.dim)], rows=s.f_module.dim)
    project = ModuleMap(Q, s.f_module, induced_on_quotient(legs, W, Subspace.zero(f, s.f_module.dim)))
    return Extension1(G2, s.f_module, Q, inject, project).validate()


def _unit_vectors(f: Field, n: int) -> List[Tuple[Any, ...]]:
    return [f.unit_vector(n, j) for j in range(n)]


# ------------------------- equivalence and Baer sum -------------------------

def equivalence_witness(s: Extension1, t: Extension1) -> Optional[ModuleMap]:
    """A middle map β: H → H' with β∘inject = inject' and project'∘β = project.

    Any such β is an isomorphism (five lemma); the rank is still asserted.
    """
    if (s.g_module, s.f_module) != (t.g_module, t.f_module):
        return None
    beta = solve_module_map(s.middle, t.middle, [
        (None, s.inject.matrix, t.inject.matrix),
        (t.project.matrix, None, s.project.matrix),
    ])
    if beta is None:
        return None
    if rank(beta.matrix) != s.middle.dim or s.middle.dim != t.middle.dim:
        raise LiftFailed("commuting middle map is not invertible")
    return beta


def is_equivalent(s: Extension1, t: Extension1) -> bool:
    return equivalence_witness(s, t) is not None


def direct_sum_ext(s: Extension1, t: Extension1) -> Extension1:
    f = s.field
    G = direct_sum([s.g_module, t.g_module]).module
    H = direct_sum([s.middle, t.middle]).module
    F = direct_sum([s.f_module, t.f_module]).module
    inject = ModuleMap(G, H, Matrix.direct_sum(f, [s.inject.matrix, t.inject.matrix]))
    project = ModuleMap(H, F, Matrix.direct_sum(f, [s.project.matrix, t.project.matrix]))
    return Extension1(G, F, H, inject, project)


def baer_sum(s: Extension1, t: Extension1) -> Extension1:
    """Pull back s ⊕ t along the diagonal of F, push out along the sum on G."""
    if (s.g_module, s.f_module) != (t.g_module, t.f_module):
        raise InvalidInput("Baer sum needs extensions with the same end modules")
    f = s.field
    G, F = s.g_module, s.f_module
    both = direct_sum_ext(s, t)
    eye_f, eye_g = Matrix.identity(f, F.dim), Matrix.identity(f, G.dim)
    diagonal = ModuleMap(F, both.f_module, Matrix.vstack(f, [eye_f, eye_f], cols=F.dim))
    codiagonal = ModuleMap(both.g_module, G, Matrix.hstack(f, [eye_g, eye_g], rows=G.dim))
    return pushout_ext(pullback_ext(both, diagonal), codiagonal)


# ------------------------- p-fold extensions -------------------------

@dataclass(frozen=True)
class ExtensionP:
    splices: Tuple[Extension1, ...]

    def __post_init__(self):
        if not self.splices:
            raise InvalidInput("a p-fold extension needs at least one splice")
        for j in range(len(self.splices) - 1):
            if self.splices[j + 1].f_module != self.splices[j].g_module:
                raise InvalidInput(f"splices {j} and {j + 1} do not glue", {"splice": j})

    @property
    def degree(self) -> int:
        return len(self.splices)

    @property
    def source(self) -> AModule:
        return self.splices[0].f_module

    @property
    def target(self) -> AModule:
        return self.splices[-1].g_module

    def validate(self) -> "ExtensionP":
        for s in self.splices:
            s.validate()
        return self

    def to_json(self) -> Dict[str, Any]:
        return {"degree": self.degree, "splices": [s.to_json() for s in self.splices]}


def yoneda_splice(first: ExtensionP, second: ExtensionP) -> ExtensionP:
    """Splice of first ∈ Ext^m(F, G) with second ∈ Ext^n(G, H)."""
    if second.source != first.target:
        raise InvalidInput("splice needs the target of the first to be the source of the second")
    return ExtensionP(first.splices + second.splices)


def _lift_through(phi: ModuleMap, project: ModuleMap) -> ModuleMap:
    """ψ out of the same free module with project ∘ ψ = phi."""
    A = phi.src.algebra
    gens = []
    for l, y in enumerate(generator_images(phi, A)):
        x = solve(project.matrix, y)
        if x is None:
            raise LiftFailed(f"generator {l} does not lift through the projection")
        gens.append(x)
    return free_map(A, project.src, gens)


def _factor_through(phi: ModuleMap, inject: ModuleMap) -> ModuleMap:
    A = phi.src.algebra
    gens = []
    for l, y in enumerate(generator_images(phi, A)):
        x = solve(inject.matrix, y)
        if x is None:
            raise LiftFailed(f"generator {l} does not land in the submodule")
        gens.append(x)
    return free_map(A, inject.src, gens)


def _with_length(res: FreeResolution, length: int) -> FreeResolution:
    if res.length >= length:
        return res
    if res.canonical:
        return free_resolution(res.module, length)
    return resolve_from(res.augmentation, length)


def ext_class_of(e: Union[ExtensionP, Extension1], resolution: Optional[FreeResolution] = None) -> ExtClass:
    """Class in Ext^p(F, G) of a splice, by lifting the augmentation through it."""
    if isinstance(e, Extension1):
        e = e.as_splice()
    p, F = e.degree, e.source
    res = _with_length(resolution or free_resolution(F, p + 1), p + 1)
    if res.module != F:
        raise InvalidInput("resolution of the wrong module")
    c = res.augmentation
    for j, sp in enumerate(e.splices):
        phi = _lift_through(c, sp.project)
        c = _factor_through(phi.compose(res.d(j + 1)), sp.inject)
    vals: List[Any] = []
    for v in generator_images(c, res.algebra):
        vals.extend(v)
    group = ext_group(F, e.target, p, resolution=res)
    LOGGER.debug("class of a %d-fold extension: %s", p, group.coordinates(tuple(vals)))
    return ExtClass(group, tuple(vals))


def extension_from_cocycle(group: ExtGroup, cocycle: Sequence[Any]) -> ExtensionP:
    """Splice E_1, …, E_{p-1}, f̄E_p of the resolution, with K_i = im d_i.

    E_i is 0 → K_i → P_{i-1} → K_{i-1} → 0 (K_0 = F) and the cocycle,
    factored through K_p, pushes out the last piece.
    """
    p = group.degree
    if p < 1:
        raise InvalidInput("extensions represent classes of degree ≥ 1")
    f = group.field
    v = f.vector(cocycle)
    if not group.is_cocycle(v):
        raise NotACocycle(f"not a cocycle of Ext^{p}")
    res = group.resolution
    modules: List[AModule] = [group.source]
    inclusions: List[Optional[ModuleMap]] = [None]
    spaces: List[Optional[Subspace]] = [None]
    for i in range(1, p + 1):
        d = res.d(i)
        W = image_basis(d.matrix) if d.dst.dim else Subspace.zero(f, 0)
        K, incl = submodule_of_subspace(d.dst, W)
        modules.append(K)
        inclusions.append(incl)
        spaces.append(W)
    splices: List[Extension1] = []
    for i in range(1, p + 1):
        P = res.term(i - 1)
        if i == 1:
            proj = res.augmentation
        else:
            W = spaces[i - 1]
            cols = [W.coordinates(c) for c in res.d(i - 1).matrix.columns()]
            proj = ModuleMap(P, modules[i - 1], _from_columns(f, cols, modules[i - 1].dim))
        splices.append(Extension1(modules[i], modules[i - 1], P, inclusions[i], proj).validate())
    phi = group.cocycle_as_map(v)
    d_p = res.d(p)
    fbar_cols = []
    for w in spaces[p].vectors():
        x = solve(d_p.matrix, w)
        fbar_cols.append(phi(x))
    fbar = ModuleMap(modules[p], group.target, _from_columns(f, fbar_cols, group.target.dim))
    splices[-1] = pushout_ext(splices[-1], fbar)
    return ExtensionP(tuple(splices)).validate()


# ------------------------- obstructions -------------------------

@dataclass(frozen=True)
class ObstructionClass:
    value: ExtClass
    vanishes: bool
    witness: Optional[Union[ModuleMap, ExtClass]] = None

    def to_json(self) -> Dict[str, Any]:
        f = self.value.group.field
        out: Dict[str, Any] = {
            "degree": self.value.degree,
            "coordinates": [f.to_str(c) for c in self.value.coordinates()],
            "vanishes": self.vanishes,
        }
        if isinstance(self.witness, ModuleMap):
            out["witness"] = {"module_map": self.witness.to_json()}
        elif isinstance(self.witness, ExtClass):
            out["witness"] = {"ext_coordinates": [f.to_str(c) for c in self.witness.coordinates()]}
        return out


def obstruction_extend(rho: ExtClass, u: Extension1) -> ObstructionClass:
    """Obstruction in Ext^{p+1}(D, G) to extending ρ ∈ Ext^p(B, G) along B → C."""
    if rho.group.source != u.g_module:
        raise InvalidInput("ρ must start at the submodule of the extension")
    p = rho.degree
    G, C, D = rho.group.target, u.middle, u.f_module
    res_D = free_resolution(D, p + 2)
    value = yoneda_product(ext_class_of(u, resolution=res_D), rho, resolution=res_D)
    vanishes = value.is_zero()
    witness: Optional[Union[ModuleMap, ExtClass]] = None
    if vanishes:
        if p == 0:
            target = ext0_to_module_map(rho.group, rho.cocycle)
            witness = solve_module_map(C, G, [(None, u.inject.matrix, target.matrix)])
        else:
            on_c = ext_group(C, G, p, length=p + 1)
            restrict = ext_map_contravariant(on_c, rho.group, u.inject)
            y = solve(restrict, rho.coordinates())
            witness = on_c.element(y) if y is not None else None
        if witness is None:
            raise LiftFailed("obstruction vanishes but no extension was found")
    LOGGER.debug("extension obstruction in degree %d: vanishes=%s", p + 1, vanishes)
    return ObstructionClass(value, vanishes, witness)


def _hom_ses(res: FreeResolution, u: Extension1) -> ShortExactSequence:
    """0 → Hom(P, B) → Hom(P, C) → Hom(P, D) → 0."""
    f = u.field
    cxB, cxC, cxD = (module_hom_complex(res, M) for M in (u.g_module, u.middle, u.f_module))

    def induced(h: ModuleMap, src, dst) -> ChainMap:
        comps = {k: Matrix.direct_sum(f, [h.matrix] * res.ranks[k]) for k in range(res.length + 1)}
        return ChainMap(src, dst, comps)

    return ShortExactSequence(induced(u.inject, cxB, cxC), induced(u.project, cxC, cxD))


def obstruction_lift(tau: ExtClass, u: Extension1) -> ObstructionClass:
    """Obstruction in Ext^{p+1}(F, B) to lifting τ ∈ Ext^p(F, D) through C → D."""
    if tau.group.target != u.f_module:
        raise InvalidInput("τ must land in the quotient of the extension")
    p = tau.degree
    F, C = tau.group.source, u.middle
    res = _with_length(tau.group.resolution, p + 2)
    on_d = ext_group(F, u.f_module, p, resolution=res)
    ses = _hom_ses(res, u)
    coords = connecting_map(ses, p).apply(on_d.coordinates(tau.cocycle))
    value = ext_group(F, u.g_module, p + 1, resolution=res).element(coords)
    vanishes = value.is_zero()
    witness: Optional[Union[ModuleMap, ExtClass]] = None
    if vanishes:
        if p == 0:
            target = ext0_to_module_map(on_d, tau.cocycle)
            witness = solve_module_map(F, C, [(u.project.matrix, None, target.matrix)])
        else:
            on_c = ext_group(F, C, p, resolution=res)
            push = ext_map_covariant(on_c, on_d, u.project)
            y = solve(push, on_d.coordinates(tau.cocycle))
            witness = on_c.element(y) if y is not None else None
        if witness is None:
            raise LiftFailed("obstruction vanishes but no lift was found")
    LOGGER.debug("lifting obstruction in degree %d: vanishes=%s", p + 1, vanishes)
    return ObstructionClass(value, vanishes, witness)


# ------------------------- long exact sequences -------------------------

@dataclass(frozen=True)
class LesReport:
    side: str
    length: int
    sequence: LongExactSequence
    connecting: Tuple[Matrix, ...]
    free_check: Optional[bool]

    @property
    def exact(self) -> bool:
        return self.sequence.exact

    def to_json(self) -> Dict[str, Any]:
        return {
            "side": self.side,
            "length": self.length,
            "nodes": list(self.sequence.labels),
            "dims": list(self.sequence.dims),
            "ranks": [rank(m) for m in self.sequence.maps],
            "connecting_ranks": [rank(m) for m in self.connecting],
            "exact": self.exact,
            "defects": self.sequence.defects(),
            "free_check": self.free_check,
        }


def free_ext_check(E: AModule, G: AModule, upto: int) -> bool:
    """For free E: Ext^{k>0}(E, G) = 0 and Ext^0(E, G) ≅ Hom_A(E, G)."""
    res = free_resolution(E, upto + 1)
    dims = [ext_group(E, G, k, resolution=res).dim for k in range(upto + 1)]
    return dims[0] == hom_space(E, G).dim and not any(dims[1:])


def les_report(u: Extension1, other: AModule, side: str = COVARIANT, length: int = 3) -> LesReport:
    """Ext sequences of 0 → B → C → D → 0 against ``other`` up to degree length-1.

    Covariant:      Ext^k(E, B) → Ext^k(E, C) → Ext^k(E, D) → Ext^{k+1}(E, B)
    Contravariant:  Ext^k(D, G) → Ext^k(C, G) → Ext^k(B, G) → Ext^{k+1}(D, G)
    """
    if side not in SIDES:
        raise InvalidInput(f"side must be one of {SIDES}")
    if length < 1:
        raise InvalidInput("length must be ≥ 1")
    u.validate()
    f = u.field
    B, C, D = u.g_module, u.middle, u.f_module
    nodes: List[Tuple[str, int]] = []
    maps: List[Matrix] = []
    deltas: List[Matrix] = []
    free_check: Optional[bool] = None
    if side == COVARIANT:
        res = free_resolution(other, length + 1)
        ses = _hom_ses(res, u)
        for k in range(length):
            nodes += [(f"Ext^{k}(E,B)", ses.B.cohomology(k).dim), (f"Ext^{k}(E,C)", ses.C.cohomology(k).dim),
                      (f"Ext^{k}(E,D)", ses.D.cohomology(k).dim)]
            maps += [ses.i.induced_on_cohomology(k), ses.p.induced_on_cohomology(k)]
            if k < length - 1:
                deltas.append(connecting_map(ses, k))
                maps.append(deltas[-1])
        if is_free(other):
            free_check = all(free_ext_check(other, M, length - 1) for M in (B, C, D))
    else:
        res_d = free_resolution(D, length + 1)
        res_c = free_resolution(C, length)
        res_b = free_resolution(B, length)
        cls = ext_class_of(u, resolution=res_d)
        for k in range(length):
            on_d = ext_group(D, other, k, resolution=res_d)
            on_c = ext_group(C, other, k, resolution=res_c)
            on_b = ext_group(B, other, k, resolution=res_b)
            nodes += [(f"Ext^{k}(D,G)", on_d.dim), (f"Ext^{k}(C,G)", on_c.dim), (f"Ext^{k}(B,G)", on_b.dim)]
            maps += [ext_map_contravariant(on_d, on_c, u.project), ext_map_contravariant(on_c, on_b, u.inject)]
            if k < length - 1:
                nxt = ext_group(D, other, k + 1, resolution=res_d)
                cols = [nxt.coordinates(yoneda_product(cls, on_b.generator(j), resolution=res_d).cocycle)
                        for j in range(on_b.dim)]
                deltas.append(_from_columns(f, cols, nxt.dim))
                maps.append(deltas[-1])
        checks = [free_ext_check(M, other, length - 1) for M in (B, C, D) if is_free(M)]
        free_check = all(checks) if checks else None
    seq = assemble_les(f, nodes, maps, closed=False)
    LOGGER.debug("LES (%s): dims %s exact=%s", side, seq.dims, seq.exact)
    return LesReport(side, length, seq, tuple(deltas), free_check)
