# -*- coding: utf-8 -*-
"""
correlation.py
==============
Correlation functionals of local operators.

A model is a nerve together with modules F_0, …, F_m over one algebra, each
constant on the nerve. A local operator of bidegree (p, q) between F_s and
F_t is a Čech q-cocycle with values in Ext^p(F_s, F_t), stored as Ext
coordinates per q-face. For a chain of operators F_0 → F_1 → … → F_k = F_0

    ⟨a_1 … a_k⟩ = t(α_1 ⋆ … ⋆ α_k)

where α_j is the class of a_j in the Čech–Ext spectral sequence (zero when it
dies), ⋆ is the cup product of Čech cochains with Yoneda products on the
values, and t is a ``VolumeFunctional`` on H^Q(nerve; Ext^P(F_0, F_0)).

Products are taken on the associated graded (E_∞ leading parts); for the
constant models built here the sequence degenerates at E_2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra import (
    AModule, ExtClass, ExtGroup, FinDimAlgebra, FreeResolution, ext0_to_module_map, ext_group,
    free_resolution, is_free, module_hom_complex, yoneda_product,
)
from cech import (
    CechClass, ComplexPresheaf, Face, Nerve, NervePresheaf, constant_presheaf, hypercohomology, vertex_space,
)
from errors import (
    DegreeMismatch, EndpointMismatch, FieldMismatch, InvalidInput, LiftFailed, NotFree, ParseError,
    ShapeMismatch, TruncationTooShort,
)
from linalg import Field, Matrix, Vector, rank, vec_add
from spectral import ClassLift, DoubleComplex, class_map

LOGGER = logging.getLogger(__name__)

Values = Dict[Face, Any]


# ------------------------- model -------------------------

@dataclass(frozen=True)
class CorrelationModel:
    nerve: Nerve
    branes: Tuple[AModule, ...]
    length: int = 4

    def __post_init__(self):
        if not self.branes:
            raise InvalidInput("a correlation model needs at least one module")
        A = self.branes[0].algebra
        if any(F.algebra != A for F in self.branes):
            raise FieldMismatch("all modules must live over the same algebra")
        if not self.nerve.faces:
            raise InvalidInput("the nerve has no faces")

    @property
    def algebra(self) -> FinDimAlgebra:
        return self.branes[0].algebra

    @property
    def field(self) -> Field:
        return self.algebra.field

    def resolution(self, s: int) -> FreeResolution:
        return free_resolution(self.branes[s], self.length)

    def ext(self, s: int, t: int, p: int) -> ExtGroup:
        if p >= self.length:
            raise InvalidInput(f"Ext^{p} needs a model of length > {p}")
        return ext_group(self.branes[s], self.branes[t], p, resolution=self.resolution(s))

    def ext_presheaf(self, s: int, t: int, p: int) -> NervePresheaf:
        return constant_presheaf(self.nerve, self.field, self.ext(s, t, p).dim)

    def pair_complex(self, s: int, t: int) -> DoubleComplex:
        """Čech–Ext double complex: column c = Čech degree, row e = Ext degree."""
        return _pair_complex(self, s, t)

    def lift_operator(self, op: "LocalOperator") -> Tuple[DoubleComplex, int, int, Vector]:
        """(double complex, column, row, cochain) of an operator's E_2 representative."""
        grp = self.ext(op.source, op.target, op.p)
        x: List[Any] = []
        for block in _blocks(op.cochain, grp.dim):
            x.extend(grp.class_vector(block))
        return self.pair_complex(op.source, op.target), op.q, op.p, tuple(x)


@lru_cache(maxsize=64)
def _pair_complex(model: CorrelationModel, s: int, t: int) -> DoubleComplex:
    hom = module_hom_complex(model.resolution(s), model.branes[t])
    dc, dims = hypercohomology(ComplexPresheaf.constant(model.nerve, hom))
    LOGGER.debug("Čech–Ext complex (%d, %d): total dims %s", s, t, dims)
    return dc


def _blocks(v: Sequence[Any], size: int) -> List[Tuple[Any, ...]]:
    if size == 0:
        return []
    return [tuple(v[i:i + size]) for i in range(0, len(v), size)]


# ------------------------- operators -------------------------

@dataclass(frozen=True)
class LocalOperator:
    """Čech q-cocycle in Ext^p(F_source, F_target), Ext coordinates per q-face."""
    source: int
    target: int
    p: int
    q: int
    cochain: Vector

    def validate(self, model: CorrelationModel) -> "LocalOperator":
        for j in (self.source, self.target):
            if not 0 <= j < len(model.branes):
                raise InvalidInput(f"unknown module index {j}")
        presheaf = model.ext_presheaf(self.source, self.target, self.p)
        if len(self.cochain) != presheaf.cochain_dim(self.q):
            raise ShapeMismatch(f"operator cochain of length {len(self.cochain)}, "
                                f"expected {presheaf.cochain_dim(self.q)}")
        vertex_class(presheaf, self.q, self.cochain)
        return self

    def scale(self, c) -> "LocalOperator":
        return LocalOperator(self.source, self.target, self.p, self.q, tuple(c * x for x in self.cochain))

    def __add__(self, other: "LocalOperator") -> "LocalOperator":
        return LocalOperator(self.source, self.target, self.p, self.q, vec_add(self.cochain, other.cochain))

    def to_json(self, field: Field) -> Dict[str, Any]:
        return {"source": self.source, "target": self.target, "p": self.p, "q": self.q,
                "cochain": [field.to_str(x) for x in self.cochain]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any], field: Field) -> "LocalOperator":
        keys = {"source", "target", "p", "q", "cochain"}
        if not isinstance(obj, dict) or set(obj) != keys:
            raise ParseError(f"an operator needs exactly the fields {sorted(keys)}")
        return cls(int(obj["source"]), int(obj["target"]), int(obj["p"]), int(obj["q"]),
                   field.vector(obj["cochain"]))


def vertex_class(presheaf: NervePresheaf, q: int, cochain: Sequence[Any]) -> CechClass:
    return CechClass(presheaf, q, presheaf.field.vector(cochain))


def operator_space(model: CorrelationModel, s: int, t: int, p: int, q: int) -> List[LocalOperator]:
    """Basis of H^q(nerve; Ext^p(F_s, F_t)) as operators."""
    grp = model.ext(s, t, p)
    if p > 0 and is_free(model.branes[s]) and grp.dim:
        raise LiftFailed(f"Ext^{p} out of a free module is nonzero", {"source": s, "degree": p})
    _, classes = vertex_space(model.ext_presheaf(s, t, p), q)
    return [LocalOperator(s, t, p, q, c.cochain) for c in classes]


# ------------------------- volume functionals -------------------------

@dataclass(frozen=True)
class VolumeFunctional:
    """Linear functional on H^q(nerve; Ext^p(F_b, F_b)) in its canonical basis.

    ``vol_scalar`` is set for trace functionals: t = vol_scalar ∘ tr.
    """
    field: Field
    brane: int
    p: int
    q: int
    coefficients: Vector
    nondegenerate: bool = False
    vol_scalar: Optional[Vector] = None

    @property
    def degree(self) -> int:
        return self.p + self.q

    def evaluate(self, coords: Sequence[Any]) -> Any:
        if len(coords) != len(self.coefficients):
            raise ShapeMismatch(f"{len(coords)} coordinates for a functional on {len(self.coefficients)}")
        total = self.field.zero
        for c, x in zip(self.coefficients, coords):
            total = total + c * x
        return total

    def to_json(self, field: Field) -> Dict[str, Any]:
        out: Dict[str, Any] = {"brane": self.brane, "p": self.p, "q": self.q,
                               "coefficients": [field.to_str(c) for c in self.coefficients],
                               "nondegenerate": self.nondegenerate}
        if self.vol_scalar is not None:
            out["vol_scalar"] = [field.to_str(c) for c in self.vol_scalar]
        return out


def volume_functional(model: CorrelationModel, brane: int, p: int, q: int,
                      coefficients: Sequence[Any], nondegenerate: bool = False) -> VolumeFunctional:
    f = model.field
    dim, _ = vertex_space(model.ext_presheaf(brane, brane, p), q)
    coeffs = f.vector(coefficients)
    if len(coeffs) != dim:
        raise ShapeMismatch(f"H^{q}(Ext^{p}) has dimension {dim}, got {len(coeffs)} coefficients")
    vol = VolumeFunctional(f, brane, p, q, coeffs, nondegenerate)
    if nondegenerate:
        check_nondegenerate(model, vol)
    return vol


def trace(psi: Matrix, algebra: FinDimAlgebra) -> Vector:
    """tr of an A-linear endomorphism of A^r: Σ_i (i-th block of ψ(u_i))."""
    n = algebra.dim
    r = psi.cols // n if n else 0
    out = algebra.field.zero_vector(n)
    for i in range(r):
        unit = [algebra.field.zero] * psi.cols
        unit[i * n:(i + 1) * n] = list(algebra.unit)
        out = vec_add(out, psi.apply(unit)[i * n:(i + 1) * n])
    return out


def _scalar_presheaf(model: CorrelationModel) -> NervePresheaf:
    return constant_presheaf(model.nerve, model.field, model.algebra.dim)


def trace_cochain(model: CorrelationModel, maps: Dict[Face, Matrix], q: int) -> Vector:
    out: List[Any] = []
    for face in model.nerve.faces_of_dim(q):
        out.extend(trace(maps[face], model.algebra))
    return tuple(out)


def apply_vol_scalar(model: CorrelationModel, vol_scalar: Sequence[Any], q: int, cochain: Sequence[Any]) -> Any:
    coords = vertex_class(_scalar_presheaf(model), q, cochain).coordinates()
    total = model.field.zero
    for c, x in zip(vol_scalar, coords):
        total = total + c * x
    return total


def locally_free_trace(model: CorrelationModel, brane: int, q: int, vol_scalar: Sequence[Any],
                       normalized_at: int = 0, nondegenerate: bool = False) -> VolumeFunctional:
    """t(σ) = vol_scalar(tr σ) on H^q(nerve; End(A^r)), vol_scalar(basis[normalized_at]) = 1."""
    F = model.branes[brane]
    if not is_free(F):
        raise NotFree(f"module {brane} is not free", {"brane": brane})
    f = model.field
    scal = f.vector(vol_scalar)
    top, _ = vertex_space(_scalar_presheaf(model), q)
    if len(scal) != top:
        raise ShapeMismatch(f"H^{q}(nerve; A) has dimension {top}, got {len(scal)} values")
    if not 0 <= normalized_at < top or scal[normalized_at] != f.one:
        raise InvalidInput("vol_scalar must send the designated top class to 1",
                           {"normalized_at": normalized_at})
    grp = model.ext(brane, brane, 0)
    _, classes = vertex_space(model.ext_presheaf(brane, brane, 0), q)
    coeffs = []
    for c in classes:
        maps = {face: ext0_to_module_map(grp, grp.class_vector(block)).matrix
                for face, block in zip(model.nerve.faces_of_dim(q), _blocks(c.cochain, grp.dim))}
        coeffs.append(apply_vol_scalar(model, scal, q, trace_cochain(model, maps, q)))
    vol = VolumeFunctional(f, brane, 0, q, tuple(coeffs), nondegenerate, scal)
    if nondegenerate:
        check_nondegenerate(model, vol)
    return vol


# ------------------------- correlate -------------------------

def cup_values(nerve: Nerve, s: int, t: int, a: Values, b: Values,
               product: Callable[[Any, Any], Any]) -> Values:
    """(a ⌣ b)(v_0 … v_{s+t}) = product(a(v_0 … v_s), b(v_s … v_{s+t}))."""
    return {face: product(a[face[:s + 1]], b[face[s:]]) for face in nerve.faces_of_dim(s + t)}


@dataclass(frozen=True)
class Correlation:
    value: Any
    lifts: Tuple[ClassLift, ...]

    @property
    def statuses(self) -> List[str]:
        return [l.status for l in self.lifts]


def _check_chain(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional) -> None:
    if not ops:
        raise InvalidInput("no operators")
    total = sum(op.p + op.q for op in ops)
    if total != vol.degree:
        raise DegreeMismatch(f"operators have total degree {total}, the functional {vol.degree}",
                             {"total": total, "expected": vol.degree})
    if ops[0].source != vol.brane or ops[-1].target != vol.brane:
        raise EndpointMismatch("the chain must start and end at the functional's module")
    for j in range(1, len(ops)):
        if ops[j].source != ops[j - 1].target:
            raise EndpointMismatch(f"operator {j} does not start where operator {j - 1} ends", {"slot": j})
    if max(op.p + op.q for op in ops) >= model.length:
        raise TruncationTooShort(f"operators of total degree ≥ {model.length} need a longer model",
                                 {"length": model.length})
    for op in ops:
        op.validate(model)


def correlate_full(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional) -> Correlation:
    _check_chain(model, ops, vol)
    f = model.field
    lifts: List[ClassLift] = []
    values: List[Values] = []
    for op in ops:
        dc, col, row, x = model.lift_operator(op)
        lift = class_map(dc, col, row, x)
        lifts.append(lift)
        if not lift.survives:
            continue
        grp = model.ext(op.source, op.target, op.p)
        lead = dc.component(col, col + row, lift.total_cocycle)
        size = grp.complex.dim(op.p)
        faces = model.nerve.faces_of_dim(col)
        values.append({face: ExtClass(grp, block) for face, block in zip(faces, _blocks(lead, size))})
    if any(not l.survives for l in lifts) or sum(op.p for op in ops) != vol.p or vol.q > model.nerve.max_dim:
        return Correlation(f.zero, tuple(lifts))
    res0 = model.resolution(vol.brane)
    acc, deg = values[0], ops[0].q
    for op, vals in zip(ops[1:], values[1:]):
        acc = cup_values(model.nerve, deg, op.q, acc, vals,
                         lambda a, b: yoneda_product(a, b, resolution=res0))
        deg += op.q
    grp = model.ext(vol.brane, vol.brane, vol.p)
    cochain: List[Any] = []
    for face in model.nerve.faces_of_dim(vol.q):
        cochain.extend(grp.coordinates(acc[face].cocycle))
    coords = vertex_class(model.ext_presheaf(vol.brane, vol.brane, vol.p), vol.q, cochain).coordinates()
    value = vol.evaluate(coords)
    LOGGER.debug("correlation of %d operators: %s", len(ops), f.to_str(value))
    return Correlation(value, tuple(lifts))


def correlate(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional) -> Any:
    return correlate_full(model, ops, vol).value


# ------------------------- trace route -------------------------

def matrix_cup(a: Matrix, b: Matrix) -> Matrix:
    """Composite of the value at the front face followed by the one at the back face."""
    return b @ a


def trace_route(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional,
                cup_product: Callable[[Matrix, Matrix], Matrix] = matrix_cup) -> Any:
    """vol_scalar(tr(cup product of the module-map valued cochains))."""
    if vol.vol_scalar is None:
        raise InvalidInput("the trace route needs a trace functional")
    maps_per_op: List[Values] = []
    for op in ops:
        if op.p != 0:
            raise DegreeMismatch("the trace route takes degree-0 operators only")
        grp = model.ext(op.source, op.target, 0)
        faces = model.nerve.faces_of_dim(op.q)
        maps_per_op.append({face: ext0_to_module_map(grp, grp.class_vector(block)).matrix
                            for face, block in zip(faces, _blocks(op.cochain, grp.dim))})
    acc, deg = maps_per_op[0], ops[0].q
    for op, maps in zip(ops[1:], maps_per_op[1:]):
        acc = cup_values(model.nerve, deg, op.q, acc, maps, cup_product)
        deg += op.q
    return apply_vol_scalar(model, vol.vol_scalar, vol.q, trace_cochain(model, acc, vol.q))


def equivalencia_check(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional,
                       cup_product: Callable[[Matrix, Matrix], Matrix] = matrix_cup) -> bool:
    """Both evaluation routes agree for free modules and degree-0 operators."""
    for op in ops:
        if not is_free(model.branes[op.source]) or not is_free(model.branes[op.target]):
            raise NotFree("the trace route needs free modules", {"brane": op.source})
    route_ext = correlate(model, ops, vol)
    route_trace = trace_route(model, ops, vol, cup_product)
    LOGGER.debug("correlation routes: %s vs %s", route_ext, route_trace)
    return route_ext == route_trace


def check_nondegenerate(model: CorrelationModel, vol: VolumeFunctional) -> bool:
    """For a free module and p = 0: (σ, τ) ↦ t(σ ⋆ τ) is perfect for every split of q."""
    F = model.branes[vol.brane]
    if vol.p != 0 or not is_free(F):
        LOGGER.debug("nondegeneracy not checkable for this functional")
        return True
    b = vol.brane
    f = model.field
    for q1 in range(vol.q + 1):
        left = operator_space(model, b, b, 0, q1)
        right = operator_space(model, b, b, 0, vol.q - q1)
        rows = [[correlate(model, [s, t], vol) for t in right] for s in left]
        m = Matrix.from_rows(f, rows, cols=len(right))
        if len(left) != len(right) or rank(m) != len(left):
            raise InvalidInput(f"pairing degenerate for the split ({q1}, {vol.q - q1})",
                               {"left": len(left), "right": len(right), "rank": rank(m)})
    return True


# ------------------------- reports -------------------------

def correlation_report(model: CorrelationModel, ops: Sequence[LocalOperator], vol: VolumeFunctional) -> Dict[str, Any]:
    f = model.field
    res = correlate_full(model, ops, vol)
    out: Dict[str, Any] = {
        "value": f.to_str(res.value),
        "operators": [l.to_json(f) for l in res.lifts],
        "functional": vol.to_json(f),
    }
    free = all(is_free(model.branes[op.source]) for op in ops)
    if vol.vol_scalar is not None and free and all(op.p == 0 for op in ops):
        route = trace_route(model, ops, vol)
        out["routes"] = {"ext": f.to_str(res.value), "trace": f.to_str(route),
                         "agree": res.value == route}
    return out


def model_from_json(obj: Dict[str, Any], algebra: FinDimAlgebra) -> CorrelationModel:
    if not isinstance(obj, dict) or "branes" not in obj:
        raise ParseError("a model is {\"nerve\": …, \"branes\": [...], \"length\": n}")
    extra = set(obj) - {"nerve", "branes", "length"}
    if extra:
        raise ParseError(f"unknown model fields {sorted(extra)}")
    nerve = Nerve.from_json(obj.get("nerve", "point"))
    branes = tuple(AModule.from_json(m, algebra) for m in obj["branes"])
    return CorrelationModel(nerve, branes, int(obj.get("length", 4)))


def volume_from_json(obj: Dict[str, Any], model: CorrelationModel) -> VolumeFunctional:
    """``{"trace": {...}}`` for a trace functional, else explicit coefficients."""
    if not isinstance(obj, dict):
        raise ParseError("a volume functional must be an object")
    if "trace" in obj:
        t = obj["trace"]
        if set(obj) != {"trace"} or set(t) - {"brane", "q", "vol_scalar", "normalized_at", "nondegenerate"}:
            raise ParseError("trace functional is {\"trace\": {brane, q, vol_scalar, normalized_at}}")
        return locally_free_trace(model, int(t.get("brane", 0)), int(t.get("q", 0)), t["vol_scalar"],
                                  int(t.get("normalized_at", 0)), bool(t.get("nondegenerate", False)))
    keys = {"brane", "p", "q", "coefficients", "nondegenerate"}
    if set(obj) - keys or "coefficients" not in obj:
        raise ParseError(f"a volume functional takes the fields {sorted(keys)}")
    return volume_functional(model, int(obj.get("brane", 0)), int(obj.get("p", 0)), int(obj.get("q", 0)),
                             obj["coefficients"], bool(obj.get("nondegenerate", False)))
