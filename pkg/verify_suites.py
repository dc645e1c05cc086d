# -*- coding: utf-8 -*-
"""
verify_suites.py
================
Named property suites, run with a fixed seed and reported per property.

    appendix     Hom(P, -) commutes with cones and cylinders, on random complexes
    d0           Koszul Ext dims against dim(O_Z)·C(n, p); Čech–Ext collapse
    les          long exact sequences, free-module vanishing, extension calculus,
                 exhaustive obstruction checks over F_2 and F_3
    spectral     abutment, d_r² = 0, page monotonicity, class round trips
    correlation  the point / triangle-boundary test matrix for 1–3 operators
    all          every suite above, in this order

Each suite draws from its own ``random.Random`` seeded by the suite seed and
the suite name, so a suite gives the same tallies alone and inside ``all``.
``HOMCAT_SEED`` overrides the seed.
"""

from __future__ import annotations

import itertools
import logging
import os
import random
from dataclasses import dataclass, field, replace
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from algebra import (
    AModule, FinDimAlgebra, ModuleMap, builtin_algebra, direct_sum, ext_group, ext_map_contravariant,
    ext_map_covariant, free_module, free_resolution, hom_space, module_map_to_ext0, point_module,
    random_module, random_module_map, residue_module, yoneda_product,
)
from cech import ComplexPresheaf, Nerve, PointData, hypercohomology, vertex_les, vertex_space
from cochain import random_chain_map, random_complex
from correlation import (
    CorrelationModel, LocalOperator, correlate, equivalencia_check, locally_free_trace, matrix_cup,
    operator_space,
)
from errors import HomcatError, UnknownSuite
from homcx import cone_hom_commutes, cylinder_hom_commutes, hom_complex
from koszul import SeparatedSequence, d0_complex_presheaf, d0_ext_dims, koszul_hom, quotient_module
from linalg import Field, Matrix, QQ_FIELD, enumerate_vectors, rank, vec_add
from spectral import (
    abutment_check, class_map, e_infinity, filtration_leading_part, page_group, pages,
    random_double_complex, staircase,
)
from strings import (
    COVARIANT, CONTRAVARIANT, Extension1, baer_sum, ext_class_of, extension_from_cocycle, free_ext_check,
    is_equivalent, les_report, nonsplit_dual_numbers, obstruction_extend, obstruction_lift, pullback_ext,
    pushout_ext, random_extension, ses_of_submodule, split_extension,
)

LOGGER = logging.getLogger(__name__)

RANDOM_SEED = 42
SEED_ENV = "HOMCAT_SEED"
MAX_EXAMPLES = 5
QUICK_COUNTS: Dict[str, Any] = dict(
    appendix_instances=12, d0_instances=4, les_instances=6, ext_instances=6, extension_instances=6,
    spectral_instances=10, correlation_trials=1, exhaustive=False,
)

FIELDS = (QQ_FIELD, Field(2), Field(3))
CALCULUS_ALGEBRAS = ("dual_numbers", "k[x]/(x^3)")
LES_ALGEBRAS = ("field", "dual_numbers", "k[x]/(x^3)", "product_of_points:2")

# Coefficients low to high over Q; the first two are the reference D0 examples.
D0_EXAMPLES: Tuple[Tuple[Tuple[int, ...], ...], ...] = (
    ((0, -1, 1), (0, 1)),
    ((0, 1), (0, 1), (0, 1)),
    ((0, 1),),
    ((0, 0, 1),),
    ((0, 2, -3, 1),),
    ((-1, 0, 1), (0, 0, 1)),
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = RANDOM_SEED
    appendix_instances: int = 500
    d0_instances: int = 60
    les_instances: int = 200
    ext_instances: int = 200
    extension_instances: int = 200
    spectral_instances: int = 200
    correlation_trials: int = 3
    max_dim: int = 3
    exhaustive: bool = True

    @classmethod
    def from_env(cls, **overrides: Any) -> "SuiteConfig":
        cfg = cls(**overrides)
        raw = os.environ.get(SEED_ENV)
        if raw is not None and raw.strip():
            try:
                cfg = replace(cfg, seed=int(raw))
            except ValueError:
                LOGGER.warning("ignoring %s=%r (not an integer)", SEED_ENV, raw)
        return cfg

    @classmethod
    def quick(cls, seed: int = RANDOM_SEED) -> "SuiteConfig":
        """Small instance counts for smoke runs and tests."""
        return cls(seed=seed, **QUICK_COUNTS)


# ------------------------- tallies -------------------------

@dataclass
class PropertyTally:
    suite: str
    name: str
    passed: int = 0
    failed: int = 0
    examples: List[str] = field(default_factory=list)

    def record(self, ok: bool, note: str = "") -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if len(self.examples) < MAX_EXAMPLES:
            self.examples.append(note)

    def check(self, fn: Callable[[], bool], note: str = "") -> bool:
        """Record ``fn()``; a workbench error counts as a failure."""
        try:
            ok = bool(fn())
        except HomcatError as exc:
            self.record(False, f"{note} [{exc.code}] {exc.message}")
            return False
        self.record(ok, note)
        return ok

    def to_json(self) -> Dict[str, Any]:
        return {"suite": self.suite, "property": self.name, "passed": self.passed,
                "failed": self.failed, "examples": list(self.examples)}


@dataclass(frozen=True)
class SuiteReport:
    name: str
    seed: int
    properties: Tuple[PropertyTally, ...]

    @property
    def ok(self) -> bool:
        return all(p.failed == 0 for p in self.properties)

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "seed": self.seed,
            "ok": self.ok,
            "passed": sum(p.passed for p in self.properties),
            "failed": sum(p.failed for p in self.properties),
            "properties": [p.to_json() for p in self.properties],
        }

    def to_frame(self) -> pd.DataFrame:
        rows = [{k: v for k, v in p.to_json().items() if k != "examples"} for p in self.properties]
        return pd.DataFrame(rows, columns=["suite", "property", "passed", "failed"])


class _Suite:
    """Tallies of one suite, created on first use and kept in order."""

    def __init__(self, name: str):
        self.name = name
        self._tallies: Dict[str, PropertyTally] = {}

    def __getitem__(self, prop: str) -> PropertyTally:
        if prop not in self._tallies:
            self._tallies[prop] = PropertyTally(self.name, prop)
        return self._tallies[prop]

    def tallies(self) -> List[PropertyTally]:
        return list(self._tallies.values())


def _pick_field(rng: random.Random) -> Field:
    return FIELDS[rng.randrange(len(FIELDS))]


# ------------------------- appendix -------------------------

def _appendix_suite(config: SuiteConfig, rng: random.Random) -> List[PropertyTally]:
    suite = _Suite("appendix")
    for i in range(config.appendix_instances):
        fld = _pick_field(rng)
        P = random_complex(fld, rng, lo=rng.randint(-1, 1), length=rng.randint(1, 3), max_dim=2)
        lo = rng.randint(-1, 1)
        K = random_complex(fld, rng, lo=lo, length=rng.randint(1, 3), max_dim=2)
        L = random_complex(fld, rng, lo=lo + rng.randint(-1, 1), length=rng.randint(1, 3), max_dim=2)
        g = random_chain_map(K, L, rng)
        note = f"instance {i} over {fld}"
        suite["hom_complex_d_squared"].check(lambda: hom_complex(P, L) is not None, note)
        suite["cone_hom_commutes"].check(lambda: cone_hom_commutes(P, g), note)
        suite["cylinder_hom_commutes"].check(lambda: cylinder_hom_commutes(P, g), note)
    return suite.tallies()


# ------------------------- d0 -------------------------

def _random_sequence(rng: random.Random) -> SeparatedSequence:
    fld = _pick_field(rng)
    polys = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 2)
        polys.append([fld.random_element(rng) for _ in range(deg)] + [fld.one])
    return SeparatedSequence.build(fld, polys)


def _check_d0(suite: _Suite, seq: SeparatedSequence, note: str) -> None:
    dims = d0_ext_dims(seq)
    module_dim = quotient_module(seq).dim
    suite["closed_form"].record(dims == [module_dim * comb(seq.n, p) for p in range(seq.n + 1)],
                                f"{note}: {dims}")
    suite["zero_differential"].record(all(koszul_hom(seq, quotient_module(seq)).zero_differential_flags()), note)
    suite["euler_characteristic"].record(sum((-1) ** p * d for p, d in enumerate(dims)) == 0, note)


def _check_collapse(suite: _Suite, seq: SeparatedSequence, note: str) -> None:
    dims = d0_ext_dims(seq)
    cp = d0_complex_presheaf(seq)
    dc, total = hypercohomology(cp)
    expected = {k: (dims[k] if 0 <= k < len(dims) else 0) for k in total}
    suite["cech_ext_total"].record(total == expected, f"{note}: {total}")
    einf = e_infinity(dc)
    suite["cech_ext_collapse"].record(
        all(d == 0 for (c, _), d in einf.items() if c > 0)
        and all(einf.get((0, k), 0) == dims[k] for k in range(len(dims))),
        note,
    )
    suite["vertex_space_rows"].record(
        all(vertex_space(cp, 0, k)[0] == dims[k] for k in range(len(dims)))
        and all(vertex_space(cp, q, k)[0] == 0 for k in range(len(dims)) for q in range(1, cp.nerve.max_dim + 1)),
        note,
    )


def _d0_suite(config: SuiteConfig, rng: random.Random) -> List[PropertyTally]:
    suite = _Suite("d0")
    for j, polys in enumerate(D0_EXAMPLES):
        seq = SeparatedSequence.build(QQ_FIELD, polys)
        _check_d0(suite, seq, f"example {j}")
        _check_collapse(suite, seq, f"example {j}")
    for i in range(config.d0_instances):
        seq = _random_sequence(rng)
        _check_d0(suite, seq, f"random {i} over {seq.field}")
    return suite.tallies()


# ------------------------- les -------------------------

def _random_cocycle(grp, rng: random.Random):
    return grp.class_vector([grp.field.random_element(rng) for _ in range(grp.dim)])


def _les_instances(suite: _Suite, config: SuiteConfig, rng: random.Random) -> None:
    for i in range(config.les_instances):
        fld = _pick_field(rng)
        A = builtin_algebra(LES_ALGEBRAS[i % len(LES_ALGEBRAS)], fld)
        u = random_extension(A, rng, max_dim=config.max_dim)
        other = random_module(A, rng, max_dim=config.max_dim)
        note = f"instance {i} over {A.name}/{fld}"
        for side in (COVARIANT, CONTRAVARIANT):
            suite[f"les_exact_{side}"].check(lambda: les_report(u, other, side, length=3).exact, note)
    A = builtin_algebra("dual_numbers", QQ_FIELD)
    fixture = les_report(nonsplit_dual_numbers(A), residue_module(A), CONTRAVARIANT, length=3)
    suite["dual_numbers_fixture"].record(
        fixture.exact and fixture.sequence.dims[1:6] == (1, 1, 1, 1, 0) and rank(fixture.connecting[0]) == 1,
        f"dims {fixture.sequence.dims}",
    )
    for i in range(max(1, config.les_instances // 20)):
        fld = _pick_field(rng)
        A = builtin_algebra("dual_numbers", fld)
        split = split_extension(random_module(A, rng), random_module(A, rng))
        G = random_module(A, rng)
        suite["split_connecting_zero"].check(
            lambda: all(m.is_zero() for m in les_report(split, G, CONTRAVARIANT, length=2).connecting),
            f"split {i}",
        )


def _vertex_les_instances(suite: _Suite, config: SuiteConfig, rng: random.Random) -> None:
    layouts = (
        (Nerve.point(), [[0]]),
        (Nerve.simplex(2), [[0], [0, 1]]),
        (Nerve.triangle_boundary(), [[0], [1], [0, 1]]),
    )
    for i in range(max(1, config.les_instances // 20)):
        fld = _pick_field(rng)
        A = builtin_algebra(CALCULUS_ALGEBRAS[i % 2], fld)
        nerve, support = layouts[i % len(layouts)]
        n_pts = max(x for opens in support for x in opens) + 1
        source = random_module(A, rng)
        points = []
        for _ in range(n_pts):
            u = random_extension(A, rng)
            points.append(PointData(u.inject, u.project, source))
        k = rng.randint(0, 1)
        suite["vertex_les_exact"].check(lambda: vertex_les(nerve, support, points, k).exact, f"instance {i}")


def _free_vanishing(suite: _Suite, config: SuiteConfig, rng: random.Random) -> None:
    for i in range(config.ext_instances):
        fld = _pick_field(rng)
        A = builtin_algebra(LES_ALGEBRAS[i % len(LES_ALGEBRAS)], fld)
        E = free_module(A, rng.randint(1, 2))
        G = random_module(A, rng, max_dim=config.max_dim)
        suite["free_ext_vanishing"].check(lambda: free_ext_check(E, G, 2), f"instance {i} over {A.name}/{fld}")


def _extension_calculus(suite: _Suite, config: SuiteConfig, rng: random.Random) -> None:
    for i in range(config.extension_instances):
        fld = _pick_field(rng)
        A = builtin_algebra(CALCULUS_ALGEBRAS[i % 2], fld)
        F, G = random_module(A, rng), random_module(A, rng)
        note = f"instance {i} over {A.name}/{fld}"
        grp = ext_group(F, G, 1)
        s = extension_from_cocycle(grp, _random_cocycle(grp, rng)).splices[0]
        t = extension_from_cocycle(grp, _random_cocycle(grp, rng)).splices[0]

        def additive() -> bool:
            cs = ext_class_of(s, resolution=grp.resolution).coordinates()
            ct = ext_class_of(t, resolution=grp.resolution).coordinates()
            return ext_class_of(baer_sum(s, t), resolution=grp.resolution).coordinates() == vec_add(cs, ct)

        suite["baer_sum_additive"].check(additive, note)

        F2, G2 = random_module(A, rng), random_module(A, rng)
        gamma = random_module_map(F2, F, rng)
        alpha = random_module_map(G, G2, rng)
        suite["pullback_pushout_commute"].check(
            lambda: is_equivalent(pullback_ext(pushout_ext(s, alpha), gamma),
                                  pushout_ext(pullback_ext(s, gamma), alpha)),
            note,
        )

        p = 1 + i % 2
        grp_p = ext_group(F, G, p)
        cocycle = _random_cocycle(grp_p, rng)

        def round_trip() -> bool:
            e = extension_from_cocycle(grp_p, cocycle)
            return ext_class_of(e, resolution=grp_p.resolution).coordinates() == grp_p.coordinates(cocycle)

        suite["cocycle_round_trip"].check(round_trip, f"{note}, degree {p}")


def _small_modules(A: FinDimAlgebra) -> List[AModule]:
    k = residue_module(A, 1)
    if A.name == "dual_numbers":
        return [k, free_module(A, 1), direct_sum([k, k]).module, direct_sum([free_module(A, 1), k]).module]
    if A.name.startswith("product_of_points"):
        return [point_module(A, 0), point_module(A, 1), free_module(A, 1)]
    return [k, residue_module(A, 2), free_module(A, 1)]


def _cyclic_extensions(M: AModule) -> List[Extension1]:
    seen, out = set(), []
    for v in enumerate_vectors(M.field, M.dim):
        W = M.span([v])
        if W.dim in (0, M.dim) or W in seen:
            continue
        seen.add(W)
        out.append(ses_of_submodule(M, W))
    return out


def _all_maps(src: AModule, dst: AModule) -> List[ModuleMap]:
    hs = hom_space(src, dst)
    return [hs.combination(c) for c in enumerate_vectors(src.field, hs.dim)]


def _key(m: Matrix) -> Tuple[Any, ...]:
    return tuple(m.entries)


def _obstructions_degree0(suite: _Suite, u: Extension1, others: Sequence[AModule], note: str) -> None:
    B, C, D = u.g_module, u.middle, u.f_module
    for G in others:
        reachable = {_key(phi.matrix @ u.inject.matrix) for phi in _all_maps(C, G)}
        grp = ext_group(B, G, 0)
        for rho in _all_maps(B, G):
            obs = obstruction_extend(module_map_to_ext0(grp, rho), u)
            ok = obs.vanishes == (_key(rho.matrix) in reachable)
            if ok and obs.vanishes:
                ok = obs.witness.matrix @ u.inject.matrix == rho.matrix
            suite["obstruction_extend_exhaustive"].record(ok, note)
    for F in others:
        reachable = {_key(u.project.matrix @ psi.matrix) for psi in _all_maps(F, C)}
        grp = ext_group(F, D, 0)
        for tau in _all_maps(F, D):
            obs = obstruction_lift(module_map_to_ext0(grp, tau), u)
            ok = obs.vanishes == (_key(tau.matrix) in reachable)
            if ok and obs.vanishes:
                ok = u.project.matrix @ obs.witness.matrix == tau.matrix
            suite["obstruction_lift_exhaustive"].record(ok, note)


def _obstructions_degree1(suite: _Suite, u: Extension1, others: Sequence[AModule], note: str) -> None:
    fld = u.field
    B, C, D = u.g_module, u.middle, u.f_module
    for G in others:
        on_b = ext_group(B, G, 1)
        on_c = ext_group(C, G, 1)
        restrict = ext_map_contravariant(on_c, on_b, u.inject)
        reachable = {restrict.apply(y) for y in enumerate_vectors(fld, on_c.dim)}
        for coords in enumerate_vectors(fld, on_b.dim):
            obs = obstruction_extend(on_b.element(coords), u)
            suite["obstruction_extend_exhaustive"].record(obs.vanishes == (coords in reachable), note)
    u_class = ext_class_of(u)
    for F in others:
        res = free_resolution(F, 3)
        on_d = ext_group(F, D, 1, resolution=res)
        on_c = ext_group(F, C, 1, resolution=res)
        push = ext_map_covariant(on_c, on_d, u.project)
        reachable = {push.apply(y) for y in enumerate_vectors(fld, on_c.dim)}
        for coords in enumerate_vectors(fld, on_d.dim):
            tau = on_d.element(coords)
            obs = obstruction_lift(tau, u)
            suite["obstruction_lift_exhaustive"].record(obs.vanishes == (coords in reachable), note)
            oracle = yoneda_product(tau, u_class, resolution=res)
            suite["obstruction_is_connecting_image"].record(
                oracle.coordinates() == obs.value.coordinates(), note)


def _obstruction_exhaustive(suite: _Suite, config: SuiteConfig) -> None:
    names = ("dual_numbers", "k[x]/(x^3)", "product_of_points:2")
    for p, name in itertools.product((2, 3), names):
        A = builtin_algebra(name, Field(p))
        modules = [M for M in _small_modules(A) if M.dim <= config.max_dim]
        for M in modules:
            for j, u in enumerate(_cyclic_extensions(M)):
                note = f"{name}/F_{p}, module of dim {M.dim}, submodule {j}"
                try:
                    _obstructions_degree0(suite, u, modules, note)
                    if name != "product_of_points:2":
                        _obstructions_degree1(suite, u, modules, note)
                except HomcatError as exc:
                    suite["obstruction_extend_exhaustive"].record(False, f"{note} [{exc.code}] {exc.message}")


def _les_suite(config: SuiteConfig, rng: random.Random) -> List[PropertyTally]:
    suite = _Suite("les")
    _les_instances(suite, config, rng)
    _vertex_les_instances(suite, config, rng)
    _free_vanishing(suite, config, rng)
    _extension_calculus(suite, config, rng)
    if config.exhaustive:
        _obstruction_exhaustive(suite, config)
    return suite.tallies()


# ------------------------- spectral -------------------------

SAMPLE_NERVES = (
    ("simplex_2", Nerve.simplex(2), True),
    ("simplex_3", Nerve.simplex(3), True),
    ("triangle_boundary", Nerve.triangle_boundary(), False),
    ("two_points", Nerve.discrete(2), False),
)


def _pages_consistent(dc) -> Tuple[bool, bool]:
    pgs = pages(dc, dc.r_max)
    squares = True
    for pg in pgs:
        for (p, q), m in pg.differentials.items():
            nxt = pg.differentials.get((p + pg.r, q - pg.r + 1))
            if nxt is not None and nxt.cols == m.rows and not (nxt @ m).is_zero():
                squares = False
    monotone = all(
        later.dim(*c) <= earlier.dim(*c)
        for earlier, later in zip(pgs, pgs[1:]) for c in dc.cells()
    )
    return squares, monotone


def _round_trip(dc) -> bool:
    for p, q in dc.cells():
        for a in page_group(dc, p, q, 2).representatives:
            lift = class_map(dc, p, q, a)
            if not lift.survives:
                continue
            lead = filtration_leading_part(dc, p, p + q, lift.total_cocycle)
            if lead != page_group(dc, p, q, None).coordinates(a):
                return False
    return True


def _spectral_suite(config: SuiteConfig, rng: random.Random) -> List[PropertyTally]:
    suite = _Suite("spectral")
    for i in range(config.spectral_instances):
        fld = _pick_field(rng)
        dc = random_double_complex(fld, rng, width=rng.randint(1, 3), height=rng.randint(1, 3),
                                   pieces=rng.randint(1, 5))
        note = f"instance {i} over {fld}"
        suite["abutment"].check(lambda: abutment_check(dc), note)
        squares, monotone = _pages_consistent(dc)
        suite["d_r_squared_zero"].record(squares, note)
        suite["pages_monotone"].record(monotone, note)
        suite["class_round_trip"].check(lambda: _round_trip(dc), note)
    dying = staircase(QQ_FIELD, 0, 1, 2)
    suite["dies_on_page_2"].record(class_map(dying, 0, 1, (QQ_FIELD.one,)).page == 2, "staircase of length 2")
    for i in range(max(1, config.spectral_instances // 10)):
        fld = _pick_field(rng)
        label, nerve, contractible = SAMPLE_NERVES[i % len(SAMPLE_NERVES)]
        cx = random_complex(fld, rng, lo=0, length=rng.randint(1, 3), max_dim=2)
        cp = ComplexPresheaf.constant(nerve, cx)
        vertical = hypercohomology(cp, "vertical")[1]
        horizontal = hypercohomology(cp, "horizontal")[1]
        suite["sign_placement_invariance"].record(vertical == horizontal, f"{label} {i}")
        if contractible:
            expected = {k: (cx.cohomology(k).dim if cx.lo <= k <= cx.hi else 0) for k in vertical}
            suite["contractible_nerve"].record(vertical == expected, f"{label} {i}")
    for j, polys in enumerate(D0_EXAMPLES[:2]):
        seq = SeparatedSequence.build(QQ_FIELD, polys)
        dc, _ = hypercohomology(d0_complex_presheaf(seq))
        suite["abutment_d0"].check(lambda: abutment_check(dc), f"D0 example {j}")
    return suite.tallies()


# ------------------------- correlation -------------------------

class _DyingModel(CorrelationModel):
    """Sends every operator through a staircase where its class dies on page 2."""

    def lift_operator(self, op: LocalOperator):
        return staircase(self.field, 0, 1, 2), 0, 1, (self.field.one,)


def _skewed_cup(a: Matrix, b: Matrix) -> Matrix:
    return matrix_cup(a, b).scale(2)


def _random_operator(model: CorrelationModel, s: int, t: int, q: int, rng: random.Random) -> LocalOperator:
    fld = model.field
    basis = operator_space(model, s, t, 0, q)
    n = model.ext_presheaf(s, t, 0).cochain_dim(q)
    op = LocalOperator(s, t, 0, q, fld.zero_vector(n))
    for b in basis:
        op = op + b.scale(fld.random_element(rng))
    return op


def _point_values(suite: _Suite, fld: Field) -> None:
    A = builtin_algebra("field", fld)
    F = free_module(A, 2)
    model = CorrelationModel(Nerve.point(), (F,), length=2)
    vol = locally_free_trace(model, 0, 0, (fld.one,))
    grp = model.ext(0, 0, 0)

    def op_of(m: Matrix) -> LocalOperator:
        return LocalOperator(0, 0, 0, 0, module_map_to_ext0(grp, ModuleMap(F, F, m)).coordinates())

    ident = op_of(Matrix.identity(fld, 2))
    e12 = op_of(Matrix.from_rows(fld, [[0, 1], [0, 0]]))
    suite["point_identity_is_rank"].record(correlate(model, [ident], vol) == fld.element(2), str(fld))
    suite["point_nilpotent_is_zero"].record(correlate(model, [e12, e12], vol) == fld.zero, str(fld))


def _correlation_suite(config: SuiteConfig, rng: random.Random) -> List[PropertyTally]:
    suite = _Suite("correlation")
    for fld in (QQ_FIELD, Field(3)):
        _point_values(suite, fld)
        for name, nerve in (("point", Nerve.point()), ("triangle_boundary", Nerve.triangle_boundary())):
            for alg_name in ("field", "dual_numbers"):
                A = builtin_algebra(alg_name, fld)
                model = CorrelationModel(nerve, (free_module(A, 1), free_module(A, 2)), length=3)
                dying = _DyingModel(model.nerve, model.branes, model.length)
                suite["free_operator_spaces_vanish"].check(
                    lambda: all(not operator_space(model, s, t, 1, 0) for s in (0, 1) for t in (0, 1)),
                    f"{name}/{alg_name}/{fld}",
                )
                for k, vol_q in itertools.product((1, 2, 3), range(nerve.max_dim + 1)):
                    scalars = (fld.one,) + tuple(fld.random_element(rng) for _ in range(A.dim - 1))
                    vol = locally_free_trace(model, 0, vol_q, scalars)
                    for trial in range(config.correlation_trials):
                        note = f"{name}/{alg_name}/{fld}, k={k}, q={vol_q}, trial {trial}"
                        chain = [0] + [rng.randrange(2) for _ in range(k - 1)] + [0]
                        qs = [0] * k
                        if vol_q:
                            qs[rng.randrange(k)] = vol_q
                        ops = [_random_operator(model, chain[j], chain[j + 1], qs[j], rng) for j in range(k)]
                        suite["equivalencia"].check(lambda: equivalencia_check(model, ops, vol), note)
                        value = correlate(model, ops, vol)
                        slot = rng.randrange(k)
                        other = _random_operator(model, ops[slot].source, ops[slot].target, qs[slot], rng)
                        c = fld.random_element(rng)
                        mixed = ops[:slot] + [ops[slot] + other.scale(c)] + ops[slot + 1:]
                        swapped = ops[:slot] + [other] + ops[slot + 1:]
                        suite["multilinear"].check(
                            lambda: correlate(model, mixed, vol) == value + c * correlate(model, swapped, vol), note)
                        if k >= 2 and value != fld.zero:
                            suite["skewed_cup_detected"].check(
                                lambda: not equivalencia_check(model, ops, vol, cup_product=_skewed_cup), note)
                        suite["dying_class_is_zero"].check(lambda: correlate(dying, ops, vol) == fld.zero, note)
    return suite.tallies()


# ------------------------- entry point -------------------------

SUITES: Dict[str, Callable[[SuiteConfig, random.Random], List[PropertyTally]]] = {
    "appendix": _appendix_suite,
    "d0": _d0_suite,
    "les": _les_suite,
    "spectral": _spectral_suite,
    "correlation": _correlation_suite,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def verify_suite(name: str, config: Optional[SuiteConfig] = None) -> SuiteReport:
    config = config or SuiteConfig.from_env()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f"unknown suite {name!r}", {"known": list(SUITE_NAMES)})
    tallies: List[PropertyTally] = []
    for n in names:
        LOGGER.info("suite %s (seed %d)", n, config.seed)
        tallies.extend(SUITES[n](config, random.Random(f"{config.seed}/{n}")))
    report = SuiteReport(name, config.seed, tuple(tallies))
    LOGGER.info("suite %s: %d passed, %d failed", name,
                sum(t.passed for t in tallies), sum(t.failed for t in tallies))
    return report
