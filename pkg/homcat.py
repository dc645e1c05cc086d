# -*- coding: utf-8 -*-
"""
homcat.py
=========
Batch front door of the workbench.

  • run(problem, timings=False) -> dict report
  • CLI: python homcat.py <command> -i problem.json [-o report.json] [--format json|text|xlsx]
         python homcat.py run -i problem.json          (command taken from the file)
         python homcat.py verify --suite appendix [--seed 42] [--quick]
         python homcat.py schema                        (payload documents)

A problem file is ``{"version": "1", "command": <name>, "payload": {...}}``.
Reports echo the command, a sha256 digest of the canonical problem, the
results and the engine version. Without ``--timings`` the JSON output is
byte-identical across runs.

Exit status: 0 success, 2 workbench error (structured JSON on stdout),
3 a verify suite reported failures, 1 anything unexpected.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra import (
    AModule, FinDimAlgebra, ModuleMap, ext_dims, ext_group, free_resolution, hom_space, is_free,
    module_map_to_ext0, yoneda_product,
)
from cech import (
    ComplexPresheaf, Nerve, NervePresheaf, PointData, cech_complex, globaxten_check, hypercohomology,
    vertex_les, vertex_space,
)
from cochain import (
    ChainMap, CochainComplex, ShortExactSequence, cohomology, cone, connecting, cylinder,
    is_quasi_isomorphism, long_exact_sequence, shift,
)
from correlation import (
    LocalOperator, correlation_report, equivalencia_check, model_from_json, operator_space,
    volume_from_json,
)
from errors import HomcatError, InvalidInput, ParseError, SchemaError, ShapeMismatch
from export_report import report_frames, write_workbook
from homcx import (
    cone_hom_commutes, cylinder_hom_commutes, hom_complex, induced_hom_map,
    induced_hom_map_contravariant,
)
from koszul import (
    EvalModule, SeparatedSequence, d0_complex_presheaf, d0_report, koszul_hom, quotient_module,
)
from linalg import Field, Matrix, rank, vector_to_json
from spectral import (
    DoubleComplex, abutment_check, class_map, e_infinity, filtration_leading_part, spectral_report,
)
from strings import (
    COVARIANT, Extension1, baer_sum, ext_class_of, extension_from_cocycle, is_equivalent, is_split,
    les_report, obstruction_extend, obstruction_lift, pullback_ext, pushout_ext, yoneda_splice,
)
from verify_suites import RANDOM_SEED, SUITE_NAMES, SuiteConfig, verify_suite

LOGGER = logging.getLogger("homcat")

ENGINE_VERSION = "1.0.0"
SCHEMA_VERSION = "1"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
LOG_LEVEL_ENV = "HOMCAT_LOG_LEVEL"
FORMATS = ("json", "text", "xlsx")
EXIT_OK, EXIT_UNEXPECTED, EXIT_ERROR, EXIT_SUITE_FAILED = 0, 1, 2, 3

PAYLOAD_SCHEMAS: Dict[str, Dict[str, Any]] = {
    "cohomology": {
        "required": [],
        "optional": ["complex", "shift", "ses"],
        "description": "Cohomology of a complex (and of its shift), or the long exact sequence of "
                       "{ses: {b, c, d, i, p}} with its connecting maps.",
    },
    "cone": {
        "required": ["source", "target", "map"],
        "optional": [],
        "description": "Mapping cone and cylinder of a chain map source → target.",
    },
    "hom": {
        "required": ["p", "b"],
        "optional": ["g", "g_target", "h", "h_target"],
        "description": "Hom complex Hom(P, B); with g: B → g_target the induced map and the "
                       "cone/cylinder commutation checks; with h: P → h_target the contravariant map.",
    },
    "koszul": {
        "required": ["polys"],
        "optional": ["field", "n", "module"],
        "description": "Koszul resolution of f_1(x_1), …, f_n(x_n) mapped into a module "
                       "(default O_Z).",
    },
    "d0": {
        "required": ["polys"],
        "optional": ["field", "n", "cover"],
        "description": "Ext^p(O_Z, O_Z) of a zero-dimensional complete intersection, with the "
                       "Čech–Ext hypercohomology over a cover of Z.",
    },
    "cech": {
        "required": ["presheaf"],
        "optional": ["field"],
        "description": "Čech complex and cohomology of a presheaf on a nerve.",
    },
    "hyper": {
        "required": [],
        "optional": ["field", "nerve", "complex", "sequence", "cover", "sign", "globaxten"],
        "description": "Hypercohomology of a constant complex presheaf (nerve + complex) or of "
                       "the D0 presheaf (sequence + cover).",
    },
    "spectral": {
        "required": ["double_complex"],
        "optional": ["up_to", "classes"],
        "description": "Pages of the column-filtration spectral sequence, E_∞, abutment and "
                       "class lifts.",
    },
    "ext": {
        "required": ["algebra", "source", "target"],
        "optional": ["degree", "upto", "length"],
        "description": "Ext^k_A(source, target) from a free resolution of the source.",
    },
    "yoneda": {
        "required": ["algebra", "modules", "a", "b"],
        "optional": [],
        "description": "Yoneda product of a ∈ Ext^m(F, G) and b ∈ Ext^n(G, H), "
                       "modules = [F, G, H].",
    },
    "extension": {
        "required": ["algebra", "extension"],
        "optional": ["second", "pullback", "pushout", "cocycle"],
        "description": "Class, splitting, equivalence, Baer sum, pullback/pushout and the "
                       "cocycle round trip of extensions.",
    },
    "obstruction": {
        "required": ["algebra", "extension", "kind", "module", "degree", "coordinates"],
        "optional": [],
        "description": "Obstruction to extending (kind=extend) or lifting (kind=lift) a class "
                       "along an extension.",
    },
    "les": {
        "required": ["algebra"],
        "optional": ["extension", "other", "side", "length", "nerve", "support", "points", "k"],
        "description": "Long exact Ext sequence of an extension, or the vertex-operator LES over "
                       "a nerve (nerve + support + points + k).",
    },
    "correlate": {
        "required": ["algebra", "model", "operators", "functional"],
        "optional": ["spaces"],
        "description": "Correlation of local operators against a volume functional.",
    },
    "verify": {
        "required": ["suite"],
        "optional": ["seed", "quick"],
        "description": "Run a named property suite: " + ", ".join(SUITE_NAMES) + ".",
    },
}
COMMANDS = tuple(PAYLOAD_SCHEMAS)

# Nested payload objects: (command, field) -> keys; "list" marks a list of such objects.
NESTED_SCHEMAS: Dict[Tuple[str, str], Dict[str, Any]] = {
    ("cohomology", "ses"): {"required": ["b", "c", "d", "i", "p"], "optional": []},
    ("hyper", "globaxten"): {"required": ["f", "h"], "optional": []},
    ("spectral", "classes"): {"required": ["p", "q", "a"], "optional": [], "list": True},
    ("yoneda", "a"): {"required": ["coordinates"], "optional": ["degree"]},
    ("yoneda", "b"): {"required": ["coordinates"], "optional": ["degree"]},
    ("extension", "pullback"): {"required": ["module", "map"], "optional": []},
    ("extension", "pushout"): {"required": ["module", "map"], "optional": []},
    ("extension", "cocycle"): {"required": ["coordinates"], "optional": ["degree"]},
    ("les", "points"): {"required": ["extension", "source"], "optional": [], "list": True},
    ("correlate", "spaces"): {"required": ["s", "t", "p", "q"], "optional": [], "list": True},
}


# ------------------------- problem files -------------------------

@dataclass(frozen=True)
class ProblemFile:
    version: str
    command: str
    payload: Dict[str, Any]

    @classmethod
    def from_json(cls, obj: Any, command: Optional[str] = None) -> "ProblemFile":
        if not isinstance(obj, dict):
            raise SchemaError("a problem file must be a JSON object")
        extra = set(obj) - {"version", "command", "payload"}
        if extra:
            raise SchemaError(f"unknown problem fields {sorted(extra)}")
        version = str(obj.get("version", SCHEMA_VERSION))
        if version != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema version {version!r}", {"supported": SCHEMA_VERSION})
        cmd = obj.get("command", command)
        if cmd is None:
            raise SchemaError("problem file without a command")
        if command is not None and cmd != command:
            raise SchemaError(f"problem file is for {cmd!r}, not {command!r}")
        if cmd not in PAYLOAD_SCHEMAS:
            raise SchemaError(f"unknown command {cmd!r}", {"known": list(COMMANDS)})
        payload = obj.get("payload", {})
        validate_payload(cmd, payload)
        return cls(version, cmd, payload)

    def to_json(self) -> Dict[str, Any]:
        return {"version": self.version, "command": self.command, "payload": self.payload}

    def digest(self) -> str:
        canonical = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def validate_payload(command: str, payload: Any) -> None:
    schema = PAYLOAD_SCHEMAS[command]
    if not isinstance(payload, dict):
        raise SchemaError(f"{command}: payload must be an object")
    missing = [k for k in schema["required"] if k not in payload]
    if missing:
        raise SchemaError(f"{command}: missing payload fields {missing}", {"missing": missing})
    unknown = sorted(set(payload) - set(schema["required"]) - set(schema["optional"]))
    if unknown:
        raise SchemaError(f"{command}: unknown payload fields {unknown}", {"unknown": unknown})
    for (cmd, key), nested in NESTED_SCHEMAS.items():
        if cmd != command or key not in payload:
            continue
        value = payload[key]
        if nested.get("list"):
            if not isinstance(value, list):
                raise SchemaError(f"{command}.{key} must be a list", {"field": key})
            for i, obj in enumerate(value):
                _validate_object(f"{command}.{key}[{i}]", obj, nested)
        else:
            _validate_object(f"{command}.{key}", value, nested)


def _validate_object(where: str, obj: Any, schema: Dict[str, Any]) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", {"field": where})
    missing = [k for k in schema["required"] if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing fields {missing}", {"field": where, "missing": missing})
    unknown = sorted(set(obj) - set(schema["required"]) - set(schema["optional"]))
    if unknown:
        raise SchemaError(f"{where}: unknown fields {unknown}", {"field": where, "unknown": unknown})


def load_problem(path: Path, command: Optional[str] = None) -> ProblemFile:
    if not path.exists():
        raise ParseError(f"input file not found: {path}", {"path": str(path)})
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path.name}: {exc.msg}", {"line": exc.lineno, "column": exc.colno})
    return ProblemFile.from_json(obj, command)


# ------------------------- payload helpers -------------------------

def _field(payload: Dict[str, Any]) -> Field:
    return Field.from_json(payload.get("field", "Q"))


def _algebra(payload: Dict[str, Any]) -> FinDimAlgebra:
    obj = payload["algebra"]
    if isinstance(obj, str):
        obj = {"builtin": obj, "field": payload.get("field", "Q")}
    return FinDimAlgebra.from_json(obj)


def _by_degree(dims: Dict[int, int]) -> Dict[str, int]:
    return {str(k): v for k, v in sorted(dims.items())}


def _complex_summary(c: CochainComplex) -> Dict[str, Any]:
    rows = []
    for n in c.degrees():
        dim, reps = cohomology(c, n)
        rows.append({"degree": n, "dim": dim, "representatives": [vector_to_json(c.field, r) for r in reps]})
    return {
        "lo": c.lo,
        "hi": c.hi,
        "dims": list(c.dims),
        "cohomology": rows,
        "euler_characteristic": c.cohomology_euler_characteristic(),
        "acyclic": c.is_acyclic(),
    }


def _cohomology_ranks(m: ChainMap) -> List[Dict[str, int]]:
    return [{"degree": n, "rank": rank(m.induced_on_cohomology(n))} for n in m.degrees()]


def _module_map(obj: Dict[str, Any], src: AModule, dst: AModule) -> ModuleMap:
    return ModuleMap(src, dst, Matrix.from_json(obj, src.field)).validate()


def _ext_element(obj: Dict[str, Any], group):
    if not isinstance(obj, dict) or "coordinates" not in obj:
        raise ParseError("an Ext class is {\"degree\": k, \"coordinates\": [...]}")
    return group.element(group.field.vector(obj["coordinates"]))


# ------------------------- handlers -------------------------

def _run_cohomology(payload: Dict[str, Any]) -> Dict[str, Any]:
    if ("complex" in payload) == ("ses" in payload):
        raise SchemaError("cohomology takes exactly one of 'complex' or 'ses'")
    if "complex" in payload:
        c = CochainComplex.from_json(payload["complex"])
        out = {"complex": _complex_summary(c)}
        if "shift" in payload:
            k = int(payload["shift"])
            out["shifted"] = {"by": k, **_complex_summary(shift(c, k))}
        return out
    obj = payload["ses"]
    if not isinstance(obj, dict) or set(obj) != {"b", "c", "d", "i", "p"}:
        raise ParseError("a short exact sequence is {b, c, d, i, p}")
    B, C, D = (CochainComplex.from_json(obj[k]) for k in ("b", "c", "d"))
    ses = ShortExactSequence(ChainMap.from_json(obj["i"], B, C), ChainMap.from_json(obj["p"], C, D))
    deltas = connecting(ses)
    les = long_exact_sequence(ses)
    return {
        "les": {"exact": les.exact, "rows": les.rows(), "defects": les.defects()},
        "connecting": [{"degree": n, "rank": rank(m), "matrix": m.to_json()} for n, m in sorted(deltas.items())],
    }


def _run_cone(payload: Dict[str, Any]) -> Dict[str, Any]:
    K = CochainComplex.from_json(payload["source"])
    L = CochainComplex.from_json(payload["target"])
    f = ChainMap.from_json(payload["map"], K, L)
    con = cone(f)
    cyl = cylinder(f)
    qis = is_quasi_isomorphism(f)
    return {
        "cone": _complex_summary(con),
        "cylinder": _complex_summary(cyl.complex),
        "quasi_isomorphism": qis,
        "cone_acyclic_iff_quasi_isomorphism": con.is_acyclic() == qis,
        "cylinder_section_quasi_isomorphism": is_quasi_isomorphism(cyl.section),
    }


def _run_hom(payload: Dict[str, Any]) -> Dict[str, Any]:
    P = CochainComplex.from_json(payload["p"])
    B = CochainComplex.from_json(payload["b"])
    out: Dict[str, Any] = {"hom": _complex_summary(hom_complex(P, B).underlying)}
    if ("g" in payload) != ("g_target" in payload):
        raise SchemaError("'g' needs 'g_target'")
    if "g" in payload:
        g = ChainMap.from_json(payload["g"], B, CochainComplex.from_json(payload["g_target"]))
        g_hat = induced_hom_map(P, g)
        out["induced"] = {
            "cohomology_ranks": _cohomology_ranks(g_hat),
            "quasi_isomorphism": is_quasi_isomorphism(g_hat),
        }
        out["cone_hom_commutes"] = cone_hom_commutes(P, g)
        out["cylinder_hom_commutes"] = cylinder_hom_commutes(P, g)
    if ("h" in payload) != ("h_target" in payload):
        raise SchemaError("'h' needs 'h_target'")
    if "h" in payload:
        h = ChainMap.from_json(payload["h"], P, CochainComplex.from_json(payload["h_target"]))
        h_hat = induced_hom_map_contravariant(h, B)
        out["contravariant"] = {
            "cohomology_ranks": _cohomology_ranks(h_hat),
            "quasi_isomorphism": is_quasi_isomorphism(h_hat),
        }
    return out


def _sequence(payload: Dict[str, Any]) -> SeparatedSequence:
    return SeparatedSequence.from_json({k: payload[k] for k in ("field", "n", "polys") if k in payload})


def _run_koszul(payload: Dict[str, Any]) -> Dict[str, Any]:
    seq = _sequence(payload)
    module = EvalModule.from_json(payload["module"], seq.field) if "module" in payload else quotient_module(seq)
    hom = koszul_hom(seq, module)
    return {
        "sequence": seq.to_json(),
        "module_dim": hom.module_dim,
        "p_dims": list(hom.p_dims),
        "dims": list(hom.underlying.dims),
        "ranks": hom.ranks(),
        "zero_differential": hom.zero_differential_flags(),
        "cohomology_dims": [hom.underlying.cohomology(p).dim for p in range(seq.n + 1)],
    }


def _run_d0(payload: Dict[str, Any]) -> Dict[str, Any]:
    seq = _sequence(payload)
    report = d0_report(seq)
    cp = d0_complex_presheaf(seq, payload.get("cover"))
    dc, total = hypercohomology(cp)
    einf = e_infinity(dc)
    dims = report["ext_dims"]
    report["hypercohomology"] = _by_degree(total)
    report["collapse"] = (all(d == 0 for (c, _), d in einf.items() if c > 0)
                          and all(einf.get((0, k), 0) == dims[k] for k in range(len(dims))))
    report["abutment"] = abutment_check(dc)
    return report


def _run_cech(payload: Dict[str, Any]) -> Dict[str, Any]:
    presheaf = NervePresheaf.from_json(payload["presheaf"], _field(payload))
    cx = cech_complex(presheaf)
    spaces = [{"q": q, "dim": vertex_space(presheaf, q)[0]} for q in range(presheaf.nerve.max_dim + 1)]
    return {"nerve": presheaf.nerve.to_json(), "complex": _complex_summary(cx), "vertex_spaces": spaces}


def _run_hyper(payload: Dict[str, Any]) -> Dict[str, Any]:
    if "sequence" in payload:
        if "nerve" in payload or "complex" in payload:
            raise SchemaError("hyper takes either 'sequence' or 'nerve' + 'complex'")
        seq = SeparatedSequence.from_json(payload["sequence"])
        cp = d0_complex_presheaf(seq, payload.get("cover"))
    else:
        if "complex" not in payload:
            raise SchemaError("hyper needs 'complex' (with an optional 'nerve') or 'sequence'")
        cx = CochainComplex.from_json(payload["complex"])
        cp = ComplexPresheaf.constant(Nerve.from_json(payload.get("nerve", "point")), cx)
    sign = payload.get("sign", "vertical")
    dc, total = hypercohomology(cp, sign)
    out: Dict[str, Any] = {
        "sign": sign,
        "total_dims": _by_degree(total),
        "e_infinity": [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(e_infinity(dc).items())],
        "abutment": abutment_check(dc),
        "vertex_spaces": [{"q": q, "k": k, "dim": vertex_space(cp, q, k)[0]}
                          for k in cp.degrees() for q in range(cp.nerve.max_dim + 1)],
    }
    if "globaxten" in payload:
        g = payload["globaxten"]
        if not isinstance(g, dict) or set(g) != {"f", "h"}:
            raise ParseError("globaxten is {\"f\": [...], \"h\": [...]}")
        out["globaxten"] = globaxten_check(g["f"], g["h"], cp)
    return out


def _run_spectral(payload: Dict[str, Any]) -> Dict[str, Any]:
    dc = DoubleComplex.from_json(payload["double_complex"])
    up_to = payload.get("up_to")
    out = spectral_report(dc, int(up_to) if up_to is not None else None)
    lifts = []
    for obj in payload.get("classes", []):
        p, q = int(obj["p"]), int(obj["q"])
        lift = class_map(dc, p, q, obj["a"])
        row = lift.to_json(dc.field)
        if lift.survives and lift.total_cocycle is not None:
            row["total_cocycle"] = vector_to_json(dc.field, lift.total_cocycle)
            row["leading"] = vector_to_json(dc.field, filtration_leading_part(dc, p, p + q, lift.total_cocycle))
        lifts.append(row)
    out["classes"] = lifts
    return out


def _run_ext(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    F = AModule.from_json(payload["source"], A)
    G = AModule.from_json(payload["target"], A)
    out: Dict[str, Any] = {"algebra": A.name, "source_free": is_free(F), "hom_dim": hom_space(F, G).dim}
    if "upto" in payload:
        upto = int(payload["upto"])
        out["dims"] = ext_dims(F, G, upto)
        out["resolution_ranks"] = list(free_resolution(F, upto + 1).ranks)
        return out
    k = int(payload.get("degree", 0))
    grp = ext_group(F, G, k, length=int(payload.get("length", k + 1)))
    out.update({
        "degree": k,
        "dim": grp.dim,
        "basis": [vector_to_json(A.field, v) for v in grp.basis],
        "resolution_ranks": list(grp.resolution.ranks),
    })
    return out


def _run_yoneda(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    mods = payload["modules"]
    if not isinstance(mods, list) or len(mods) != 3:
        raise ParseError("yoneda needs modules = [F, G, H]")
    F, G, H = (AModule.from_json(m, A) for m in mods)
    if not all(isinstance(payload[k], dict) for k in ("a", "b")):
        raise ParseError("a and b are {\"degree\": k, \"coordinates\": [...]}")
    m, n = int(payload["a"].get("degree", 1)), int(payload["b"].get("degree", 1))
    res_F = free_resolution(F, m + n + 1)
    ga = ext_group(F, G, m, resolution=res_F)
    gb = ext_group(G, H, n, length=n + 1)
    a, b = _ext_element(payload["a"], ga), _ext_element(payload["b"], gb)
    product = yoneda_product(a, b, resolution=res_F)
    out: Dict[str, Any] = {
        "degree": m + n,
        "dims": {"a": ga.dim, "b": gb.dim, "product": product.group.dim},
        "coordinates": vector_to_json(A.field, product.coordinates()),
        "zero": product.is_zero(),
    }
    if m >= 1 and n >= 1:
        splice = yoneda_splice(extension_from_cocycle(ga, a.cocycle), extension_from_cocycle(gb, b.cocycle))
        out["splice_agrees"] = ext_class_of(splice, resolution=res_F).coordinates() == product.coordinates()
    return out


def _coords(field: Field, cls) -> List[str]:
    return vector_to_json(field, cls.coordinates())


def _run_extension(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    f = A.field
    e = Extension1.from_json(payload["extension"], A)
    cls = ext_class_of(e)
    out: Dict[str, Any] = {
        "dims": {"g_module": e.g_module.dim, "middle": e.middle.dim, "f_module": e.f_module.dim},
        "class": _coords(f, cls),
        "split": is_split(e),
    }
    if "second" in payload:
        s2 = Extension1.from_json(payload["second"], A)
        c2 = ext_class_of(s2)
        total = ext_class_of(baer_sum(e, s2))
        out["second"] = {
            "class": _coords(f, c2),
            "equivalent": is_equivalent(e, s2),
            "baer_sum": _coords(f, total),
            "baer_sum_additive": total.same_class(cls + c2),
        }
    gamma = alpha = None
    if "pullback" in payload:
        obj = payload["pullback"]
        gamma = _module_map(obj["map"], AModule.from_json(obj["module"], A), e.f_module)
        out["pullback"] = {"class": _coords(f, ext_class_of(pullback_ext(e, gamma))),
                           "split": is_split(pullback_ext(e, gamma))}
    if "pushout" in payload:
        obj = payload["pushout"]
        alpha = _module_map(obj["map"], e.g_module, AModule.from_json(obj["module"], A))
        out["pushout"] = {"class": _coords(f, ext_class_of(pushout_ext(e, alpha))),
                          "split": is_split(pushout_ext(e, alpha))}
    if gamma is not None and alpha is not None:
        out["pullback_pushout_commute"] = is_equivalent(pushout_ext(pullback_ext(e, gamma), alpha),
                                                        pullback_ext(pushout_ext(e, alpha), gamma))
    if "cocycle" in payload:
        obj = payload["cocycle"]
        degree = int(obj.get("degree", 1))
        grp = ext_group(e.f_module, e.g_module, degree, length=degree + 1)
        v = grp.class_vector(f.vector(obj["coordinates"]))
        built = extension_from_cocycle(grp, v)
        back = ext_class_of(built, resolution=grp.resolution)
        out["from_cocycle"] = {
            "degree": degree,
            "middle_dims": [s.middle.dim for s in built.splices],
            "class": _coords(f, back),
            "round_trip": back.coordinates() == grp.coordinates(v),
        }
    return out


def _run_obstruction(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    u = Extension1.from_json(payload["extension"], A)
    M = AModule.from_json(payload["module"], A)
    p = int(payload["degree"])
    kind = payload["kind"]
    if kind == "extend":
        grp = ext_group(u.g_module, M, p, length=p + 1)
        result = obstruction_extend(grp.element(A.field.vector(payload["coordinates"])), u)
    elif kind == "lift":
        grp = ext_group(M, u.f_module, p, length=p + 2)
        result = obstruction_lift(grp.element(A.field.vector(payload["coordinates"])), u)
    else:
        raise InvalidInput(f"kind must be 'extend' or 'lift', got {kind!r}")
    return {"kind": kind, **result.to_json()}


def _run_les(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    if "points" in payload:
        missing = [k for k in ("nerve", "support", "k") if k not in payload]
        if missing:
            raise SchemaError(f"vertex LES needs {missing}")
        points = []
        for obj in payload["points"]:
            u = Extension1.from_json(obj["extension"], A)
            points.append(PointData(u.inject, u.project, AModule.from_json(obj["source"], A)))
        length = payload.get("length")
        les = vertex_les(Nerve.from_json(payload["nerve"]), payload["support"], points, int(payload["k"]),
                         int(length) if length is not None else None)
        return {"vertex": les.to_json()}
    if "extension" not in payload or "other" not in payload:
        raise SchemaError("les needs 'extension' and 'other' (or the vertex form with 'points')")
    u = Extension1.from_json(payload["extension"], A)
    other = AModule.from_json(payload["other"], A)
    return les_report(u, other, payload.get("side", COVARIANT), int(payload.get("length", 3))).to_json()


def _operator(obj: Dict[str, Any], model) -> LocalOperator:
    """Ext coordinates per face, or for p = 0 one module map per q-face."""
    if not (isinstance(obj, dict) and "maps" in obj):
        return LocalOperator.from_json(obj, model.field).validate(model)
    keys = {"source", "target", "q", "maps"}
    if set(obj) != keys:
        raise ParseError(f"an operator given by maps needs exactly the fields {sorted(keys)}")
    s, t, q = int(obj["source"]), int(obj["target"]), int(obj["q"])
    for j in (s, t):
        if not 0 <= j < len(model.branes):
            raise InvalidInput(f"unknown module index {j}")
    faces = model.nerve.faces_of_dim(q)
    if len(obj["maps"]) != len(faces):
        raise ShapeMismatch(f"{len(obj['maps'])} maps for {len(faces)} faces of dimension {q}")
    grp = model.ext(s, t, 0)
    coords: List[Any] = []
    for m in obj["maps"]:
        psi = _module_map(m, model.branes[s], model.branes[t])
        coords.extend(module_map_to_ext0(grp, psi).coordinates())
    return LocalOperator(s, t, 0, q, tuple(coords)).validate(model)


def _run_correlate(payload: Dict[str, Any]) -> Dict[str, Any]:
    A = _algebra(payload)
    model = model_from_json(payload["model"], A)
    ops = [_operator(o, model) for o in payload["operators"]]
    vol = volume_from_json(payload["functional"], model)
    out = correlation_report(model, ops, vol)
    if "routes" in out:
        out["equivalencia"] = equivalencia_check(model, ops, vol)
    spaces = []
    for obj in payload.get("spaces", []):
        s, t, p, q = (int(obj[k]) for k in ("s", "t", "p", "q"))
        spaces.append({"s": s, "t": t, "p": p, "q": q, "dim": len(operator_space(model, s, t, p, q))})
    if spaces:
        out["spaces"] = spaces
    return out


def _suite_config(seed: Optional[int], quick: bool) -> SuiteConfig:
    if seed is None:
        seed = SuiteConfig.from_env().seed
    return SuiteConfig.quick(seed) if quick else SuiteConfig(seed=seed)


def _run_verify(payload: Dict[str, Any]) -> Dict[str, Any]:
    seed = payload.get("seed")
    config = _suite_config(int(seed) if seed is not None else None, bool(payload.get("quick", False)))
    return verify_suite(payload["suite"], config).to_json()


HANDLERS: Dict[str, Callable[[Dict[str, Any]], Dict[str, Any]]] = {
    "cohomology": _run_cohomology,
    "cone": _run_cone,
    "hom": _run_hom,
    "koszul": _run_koszul,
    "d0": _run_d0,
    "cech": _run_cech,
    "hyper": _run_hyper,
    "spectral": _run_spectral,
    "ext": _run_ext,
    "yoneda": _run_yoneda,
    "extension": _run_extension,
    "obstruction": _run_obstruction,
    "les": _run_les,
    "correlate": _run_correlate,
    "verify": _run_verify,
}


def run(problem: ProblemFile, timings: bool = False) -> Dict[str, Any]:
    LOGGER.info("%s: start (digest %s)", problem.command, problem.digest()[:12])
    started = time.perf_counter()
    try:
        results = HANDLERS[problem.command](problem.payload)
    except HomcatError:
        raise
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ParseError(f"{problem.command}: malformed payload ({type(exc).__name__}: {exc})",
                         {"exception": type(exc).__name__}) from exc
    elapsed = (time.perf_counter() - started) * 1000.0
    LOGGER.info("%s: done in %.1f ms", problem.command, elapsed)
    return {
        "command": problem.command,
        "engine_version": ENGINE_VERSION,
        "schema_version": problem.version,
        "inputs_digest": problem.digest(),
        "results": results,
        "timings": {"total_ms": round(elapsed, 3)} if timings else {},
    }


# ------------------------- output -------------------------

def dump_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(report: Dict[str, Any]) -> str:
    parts = []
    for name, frame in report_frames(report).items():
        body = frame.to_string(index=False) if not frame.empty else "(empty)"
        parts.append(f"== {name} ==\n{body}")
    return "\n\n".join(parts) + "\n"


def schema_document() -> Dict[str, Any]:
    return {
        "version": SCHEMA_VERSION,
        "problem": {"required": ["command", "payload"], "optional": ["version"]},
        "commands": PAYLOAD_SCHEMAS,
        "nested": [{"command": c, "field": k, **v} for (c, k), v in NESTED_SCHEMAS.items()],
    }


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else os.environ.get(LOG_LEVEL_ENV, "INFO").upper()
    try:
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    except ValueError:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr, force=True)
        LOGGER.warning("ignoring %s=%r", LOG_LEVEL_ENV, os.environ.get(LOG_LEVEL_ENV))


def _emit(report: Dict[str, Any], fmt: str, out: Optional[str]) -> None:
    if fmt == "xlsx":
        if not out:
            raise InvalidInput("--format xlsx needs --out")
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        write_workbook(report, out_path)
        print(f"OK: wrote {out_path.name}")
        return
    text = dump_json(report) if fmt == "json" else render_text(report)
    if out:
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(text, encoding="utf-8")
        print(f"OK: wrote {out_path.name}")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--in", dest="input", help="problem file (JSON)")
    common.add_argument("-o", "--out", dest="output", help="report file (stdout when omitted)")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging")
    common.add_argument("--timings", action="store_true", help="record wall-clock milliseconds")

    parser = argparse.ArgumentParser(prog="homcat", description="Exact homological algebra workbench.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=PAYLOAD_SCHEMAS[name]["description"])
        if name == "verify":
            p.add_argument("--suite", choices=SUITE_NAMES)
            p.add_argument("--seed", type=int, help=f"suite seed (default {RANDOM_SEED} or $HOMCAT_SEED)")
            p.add_argument("--quick", action="store_true", help="small instance counts")
    sub.add_parser("run", parents=[common], help="run a problem file, command taken from the file")
    p = sub.add_parser("schema", help="print the payload schema documents")
    p.add_argument("-o", "--out", dest="output")
    return parser


def _problem_from_args(args: argparse.Namespace) -> ProblemFile:
    command = None if args.command == "run" else args.command
    if args.command == "verify" and not args.input:
        if not args.suite:
            raise SchemaError("verify needs --suite or --in")
        payload: Dict[str, Any] = {"suite": args.suite}
        if args.seed is not None:
            payload["seed"] = args.seed
        if args.quick:
            payload["quick"] = True
        return ProblemFile.from_json({"command": "verify", "payload": payload})
    if not args.input:
        raise ParseError(f"{args.command} needs --in <problem.json>")
    problem = load_problem(Path(args.input), command)
    if problem.command == "verify" and args.command == "verify":
        payload = dict(problem.payload)
        if args.seed is not None:
            payload["seed"] = args.seed
        if args.quick:
            payload["quick"] = True
        problem = ProblemFile(problem.version, problem.command, payload)
    return problem


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "verbose", False))
    try:
        if args.command == "schema":
            text = json.dumps(schema_document(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
            if args.output:
                Path(args.output).write_text(text, encoding="utf-8")
                print(f"OK: wrote {Path(args.output).name}")
            else:
                sys.stdout.write(text)
            return EXIT_OK
        problem = _problem_from_args(args)
        report = run(problem, timings=args.timings)
        _emit(report, args.format, args.output)
    except HomcatError as exc:
        LOGGER.error("%s: %s", exc.code, exc.message)
        sys.stdout.write(json.dumps({"error": exc.to_dict()}, sort_keys=True, ensure_ascii=False) + "\n")
        return EXIT_ERROR
    except Exception:
        LOGGER.exception("unexpected failure")
        return EXIT_UNEXPECTED
    if problem.command == "verify" and not report["results"]["ok"]:
        return EXIT_SUITE_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
