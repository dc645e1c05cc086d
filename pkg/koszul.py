# -*- coding: utf-8 -*-
"""
koszul.py
=========
Koszul complexes of separated regular sequences f_i ∈ k[x_i] and their Hom
complexes into finite-dimensional evaluation modules.

Exterior basis: subsets of {0..n-1} of size p in colexicographic order.
Hom(E_p, M) is identified with M^{C(n,p)} (values on e_S), and

    (∂*φ)(e_S) = Σ_j (−1)^j f_{s_j}(X_{s_j}) φ(e_{S∖s_j}),   S = (s_0 < … < s_p).

Tensor layouts put the first variable most significant.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Rational, symbols

from cech import ComplexPresheaf, Nerve
from cochain import ChainMap, CochainComplex, direct_sum
from errors import InvalidInput, ParseError, VariableCountMismatch
from linalg import Field, Matrix, kron, rank

LOGGER = logging.getLogger(__name__)

_X = symbols("x")


# ------------------------- sequences and modules -------------------------

@dataclass(frozen=True)
class SeparatedSequence:
    """f_1(x_1), …, f_n(x_n); coefficients low-to-high, each f_i monic."""
    field: Field
    polys: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self):
        for i, f in enumerate(self.polys):
            if len(f) < 2:
                raise InvalidInput(f"f_{i + 1} must be nonconstant")
            if f[-1] != self.field.one:
                raise InvalidInput(f"f_{i + 1} must be monic")

    @classmethod
    def build(cls, field: Field, polys: Sequence[Sequence[Any]]) -> "SeparatedSequence":
        """Parse coefficient lists; trailing zeros are dropped and each f_i made monic."""
        out = []
        for i, coeffs in enumerate(polys):
            c = list(field.vector(coeffs))
            while c and c[-1] == 0:
                c.pop()
            if len(c) < 2:
                raise InvalidInput(f"f_{i + 1} must be nonconstant")
            lead = c[-1]
            out.append(tuple(x / lead for x in c))
        return cls(field, tuple(out))

    @property
    def n(self) -> int:
        return len(self.polys)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(f) - 1 for f in self.polys)

    def to_json(self) -> Dict[str, Any]:
        return {"field": self.field.to_json(), "n": self.n,
                "polys": [[self.field.to_str(c) for c in f] for f in self.polys]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "SeparatedSequence":
        if not isinstance(obj, dict) or "polys" not in obj:
            raise ParseError("a sequence is {\"n\": …, \"polys\": [[…], …]}")
        extra = set(obj) - {"field", "n", "polys"}
        if extra:
            raise ParseError(f"unknown sequence fields {sorted(extra)}")
        seq = cls.build(Field.from_json(obj.get("field", "Q")), obj["polys"])
        if "n" in obj and int(obj["n"]) != seq.n:
            raise VariableCountMismatch(f"n = {obj['n']} but {seq.n} polynomials given")
        return seq


@dataclass(frozen=True)
class EvalModule:
    field: Field
    dim: int
    var_actions: Tuple[Matrix, ...]

    def __post_init__(self):
        for X in self.var_actions:
            if X.shape != (self.dim, self.dim):
                raise InvalidInput(f"variable actions must be {self.dim}x{self.dim}")
        for X, Y in itertools.combinations(self.var_actions, 2):
            if X @ Y != Y @ X:
                raise InvalidInput("variable actions do not commute")

    @property
    def n(self) -> int:
        return len(self.var_actions)

    def to_json(self) -> Dict[str, Any]:
        return {"dim": self.dim, "var_actions": [X.to_json() for X in self.var_actions]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any], field: Field) -> "EvalModule":
        if not isinstance(obj, dict) or set(obj) - {"dim", "var_actions"}:
            raise ParseError("an evaluation module is {\"dim\": d, \"var_actions\": [...]}")
        acts = tuple(Matrix.from_json(m, field) for m in obj["var_actions"])
        dim = int(obj.get("dim", acts[0].rows if acts else 0))
        return cls(field, dim, acts)


def companion_matrix(field: Field, coeffs: Sequence[Any]) -> Matrix:
    """Multiplication by x on k[x]/(f), basis 1, x, …, x^{d-1}."""
    d = len(coeffs) - 1
    entries = [field.zero] * (d * d)
    for j in range(d - 1):
        entries[(j + 1) * d + j] = field.one
    for j in range(d):
        entries[j * d + d - 1] = -coeffs[j]
    return Matrix(field, d, d, tuple(entries))


def poly_at(field: Field, coeffs: Sequence[Any], X: Matrix) -> Matrix:
    """f(X) by Horner."""
    n = X.rows
    out = Matrix.scalar(field, n, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        out = out @ X + Matrix.scalar(field, n, c)
    return out


def quotient_module(seq: SeparatedSequence) -> EvalModule:
    """⊗_i k[x_i]/(f_i) with X_i the companion matrix on the i-th factor."""
    f = seq.field
    comps = [companion_matrix(f, p) for p in seq.polys]
    dims = [c.rows for c in comps]
    acts = []
    for i, C in enumerate(comps):
        X = Matrix.identity(f, 1)
        for j, d in enumerate(dims):
            X = kron(X, C if j == i else Matrix.identity(f, d))
        acts.append(X)
    total = 1
    for d in dims:
        total *= d
    return EvalModule(f, total, tuple(acts))


# ------------------------- Koszul Hom complex -------------------------

def exterior_basis(n: int, p: int) -> List[Tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), p), key=lambda s: tuple(reversed(s)))


@dataclass(frozen=True)
class KoszulHomComplex:
    underlying: CochainComplex
    n: int
    module_dim: int
    subsets: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def p_dims(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.subsets)

    def zero_differential_flags(self) -> List[bool]:
        return [self.underlying.d(p).is_zero() for p in range(self.n)]

    def ranks(self) -> List[int]:
        return [rank(self.underlying.d(p)) for p in range(self.n)]


def koszul_differential(seq: SeparatedSequence, m: EvalModule, p: int) -> Matrix:
    f = seq.field
    src, dst = exterior_basis(seq.n, p), exterior_basis(seq.n, p + 1)
    pos = {S: k for k, S in enumerate(src)}
    values = [poly_at(f, seq.polys[i], m.var_actions[i]) for i in range(seq.n)]
    grid: List[List[Optional[Matrix]]] = [[None] * len(src) for _ in dst]
    for r, S in enumerate(dst):
        for j, i in enumerate(S):
            T = S[:j] + S[j + 1:]
            blk = values[i] if j % 2 == 0 else -values[i]
            grid[r][pos[T]] = blk
    return Matrix.block(f, grid, [m.dim] * len(dst), [m.dim] * len(src))


def koszul_hom(seq: SeparatedSequence, m: EvalModule) -> KoszulHomComplex:
    if m.n != seq.n:
        raise VariableCountMismatch(f"module has {m.n} variables, sequence has {seq.n}",
                                    {"module": m.n, "sequence": seq.n})
    if m.field != seq.field:
        raise InvalidInput("module and sequence over different fields")
    n = seq.n
    subsets = tuple(tuple(exterior_basis(n, p)) for p in range(n + 1))
    dims = [len(s) * m.dim for s in subsets]
    diffs = [koszul_differential(seq, m, p) for p in range(n)]
    cx = CochainComplex.build(seq.field, 0, dims, diffs)
    LOGGER.debug("Koszul Hom complex: n=%d module dim %d dims %s", n, m.dim, dims)
    return KoszulHomComplex(cx, n, m.dim, subsets)


def d0_ext_dims(seq: SeparatedSequence) -> List[int]:
    """Ext^p(O_Z, O_Z) dims as cohomology of Hom(E_•, O_Z)."""
    cx = koszul_hom(seq, quotient_module(seq)).underlying
    return [cx.cohomology(p).dim for p in range(seq.n + 1)]


# ------------------------- local pieces of O_Z -------------------------

@dataclass(frozen=True)
class LocalPoint:
    """One closed point of Z with its local sequence g_i^{e_i}."""
    factors: Tuple[Tuple[Any, ...], ...]
    multiplicities: Tuple[int, ...]
    sequence: SeparatedSequence

    @property
    def dim(self) -> int:
        out = 1
        for d in self.sequence.degrees():
            out *= d
        return out

    @property
    def reduced(self) -> bool:
        return all(e == 1 for e in self.multiplicities)

    @property
    def rational(self) -> bool:
        return all(len(g) == 2 for g in self.factors)

    def to_json(self) -> Dict[str, Any]:
        f = self.sequence.field
        return {"factors": [[f.to_str(c) for c in g] for g in self.factors],
                "multiplicities": list(self.multiplicities), "dim": self.dim,
                "reduced": self.reduced, "rational": self.rational}


def _to_poly(field: Field, coeffs: Sequence[Any]) -> Poly:
    high = [Rational(field.to_fraction(c).numerator, field.to_fraction(c).denominator) for c in reversed(coeffs)]
    if field.p is None:
        return Poly(high, _X, domain="QQ")
    return Poly([int(c) for c in high], _X, modulus=field.p)


def _from_poly(field: Field, poly: Poly) -> Tuple[Any, ...]:
    coeffs = []
    for c in reversed(poly.all_coeffs()):
        if field.p is None:
            r = Rational(c)
            coeffs.append(field.element(Fraction(int(r.p), int(r.q))))
        else:
            coeffs.append(field.element(int(c)))
    lead = coeffs[-1]
    return tuple(c / lead for c in coeffs)


def univariate_factors(field: Field, coeffs: Sequence[Any]) -> List[Tuple[Tuple[Any, ...], int]]:
    """Monic irreducible factors with multiplicities, in sympy's order."""
    _, facs = _to_poly(field, coeffs).factor_list()
    return [(_from_poly(field, g), int(e)) for g, e in facs]


def local_points(seq: SeparatedSequence) -> List[LocalPoint]:
    """Split O_Z = ⊗ k[x_i]/(f_i) into its local factors by the Chinese remainder theorem."""
    f = seq.field
    per_var = [univariate_factors(f, p) for p in seq.polys]
    points = []
    for combo in itertools.product(*per_var):
        factors = tuple(g for g, _ in combo)
        mults = tuple(e for _, e in combo)
        powers = [_from_poly(f, _to_poly(f, g) ** e) for g, e in combo]
        points.append(LocalPoint(factors, mults, SeparatedSequence(f, tuple(powers))))
    LOGGER.debug("O_Z splits into %d local pieces of dims %s", len(points), [p.dim for p in points])
    return points


def d0_complex_presheaf(seq: SeparatedSequence,
                        assignment: Optional[Sequence[Sequence[int]]] = None) -> ComplexPresheaf:
    """Hom(E_•, O_Z) over a cover of Z given by the point sets of its opens.

    The default cover has one open per closed point. Face values are the sums
    over the points lying in every open of the face; restrictions project.
    """
    points = local_points(seq)
    if assignment is None:
        assignment = [[i] for i in range(len(points))]
    covered = {i for opens in assignment for i in opens}
    if covered != set(range(len(points))):
        raise InvalidInput("every point of Z must lie in some open of the cover")
    nerve = Nerve.simplex(len(assignment))
    local = [koszul_hom(seq, quotient_module(pt.sequence)).underlying for pt in points]
    f = seq.field

    def support(face: Tuple[int, ...]) -> List[int]:
        common = set(range(len(points)))
        for v in face:
            common &= set(assignment[v])
        return sorted(common)

    def value(face):
        pts = support(face)
        if not pts:
            return CochainComplex.build(f, 0, [0] * (seq.n + 1),
                                        [Matrix.zeros(f, 0, 0)] * seq.n)
        return direct_sum(f, [local[i] for i in pts])

    complexes = {face: value(face) for face in nerve.faces}
    restrictions = {}
    for face in nerve.faces:
        for j in range(len(face)):
            sub = face[:j] + face[j + 1:]
            if not sub:
                continue
            src_pts, dst_pts = support(sub), support(face)
            comps = {}
            for deg in range(seq.n + 1):
                col_off, c0, r0 = {}, 0, 0
                for i in src_pts:
                    col_off[i] = c0
                    c0 += local[i].dim(deg)
                entries = [[f.zero] * c0 for _ in range(sum(local[i].dim(deg) for i in dst_pts))]
                for i in dst_pts:
                    for k in range(local[i].dim(deg)):
                        entries[r0 + k][col_off[i] + k] = f.one
                    r0 += local[i].dim(deg)
                comps[deg] = Matrix.from_rows(f, entries, c0) if entries else Matrix.zeros(f, 0, c0)
            restrictions[(sub, face)] = ChainMap(complexes[sub], complexes[face], comps)
    return ComplexPresheaf.build(nerve, complexes, restrictions)


def d0_report(seq: SeparatedSequence) -> Dict[str, Any]:
    hom = koszul_hom(seq, quotient_module(seq))
    dims = d0_ext_dims(seq)
    pts = local_points(seq)
    return {
        "n": seq.n,
        "dim_O_Z": hom.module_dim,
        "ext_dims": dims,
        "p_dims": [hom.underlying.dim(p) for p in range(seq.n + 1)],
        "ranks": hom.ranks(),
        "zero_differential": hom.zero_differential_flags(),
        "points": [p.to_json() for p in pts],
        "fat": any(not p.reduced for p in pts),
    }

