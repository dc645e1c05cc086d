# -*- coding: utf-8 -*-
import json
import sys
from pathlib import Path

import pytest

import homcat
from export_report import read_workbook
from homcat import EXIT_ERROR, EXIT_OK, ProblemFile, load_problem, main, run

PROBLEMS = sorted((Path(__file__).resolve().parents[1] / "problems").glob("*.json"))


def _report(problems_dir, name, tmp_path):
    out = tmp_path / f"{name}.report.json"
    assert main(["run", "-i", str(problems_dir / f"{name}.json"), "-o", str(out)]) == EXIT_OK
    return json.loads(out.read_text(encoding="utf-8"))["results"]


def _error(capsys):
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.startswith("{")]
    return json.loads(lines[-1])["error"]


@pytest.mark.parametrize("path", PROBLEMS, ids=[p.stem for p in PROBLEMS])
def test_reports_are_byte_identical(path, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "-i", str(path), "-o", str(first), "--format", "json"]) == EXIT_OK
    assert main(["run", "-i", str(path), "-o", str(second), "--format", "json"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text(encoding="utf-8"))
    assert report["inputs_digest"] == load_problem(path).digest()
    assert report["timings"] == {}


def test_d0_examples(problems_dir, tmp_path):
    two = _report(problems_dir, "d0_two_points", tmp_path)
    assert two["ext_dims"] == [2, 4, 2]
    assert {k: v for k, v in two["hypercohomology"].items() if v} == {"0": 2, "1": 4, "2": 2}
    assert two["abutment"] is True
    assert _report(problems_dir, "d0_reduced_point", tmp_path)["ext_dims"] == [1, 3, 3, 1]


def test_koszul_and_hyper_d0(problems_dir, tmp_path):
    kz = _report(problems_dir, "koszul_two_points", tmp_path)
    assert kz["dims"] == [2, 4, 2]
    assert kz["cohomology_dims"] == [2, 4, 2]
    hy = _report(problems_dir, "hyper_d0", tmp_path)
    assert {k: v for k, v in hy["total_dims"].items() if v} == {"0": 2, "1": 4, "2": 2}


def test_complexes(problems_dir, tmp_path):
    acyclic = _report(problems_dir, "cohomology_acyclic", tmp_path)
    assert acyclic["complex"]["acyclic"] is True
    assert all(row["dim"] == 0 for row in acyclic["complex"]["cohomology"])
    assert acyclic["shifted"]["lo"] == -1
    ses = _report(problems_dir, "cohomology_ses", tmp_path)
    assert ses["les"]["exact"] is True
    assert max(c["rank"] for c in ses["connecting"]) == 1
    cone = _report(problems_dir, "cone_identity", tmp_path)
    assert cone["quasi_isomorphism"] is True
    assert cone["cone"]["acyclic"] is True
    assert cone["cylinder_section_quasi_isomorphism"] is True


def test_hom_problem(problems_dir, tmp_path):
    hom = _report(problems_dir, "hom_maps", tmp_path)
    assert hom["hom"]["acyclic"] is True
    assert hom["cone_hom_commutes"] is True
    assert hom["cylinder_hom_commutes"] is True
    assert hom["induced"]["quasi_isomorphism"] is False


def test_cech_problems(problems_dir, tmp_path):
    tri = _report(problems_dir, "cech_triangle", tmp_path)
    assert [row["dim"] for row in tri["complex"]["cohomology"]] == [1, 1]
    sky = _report(problems_dir, "cech_skyscraper", tmp_path)
    assert [row["dim"] for row in sky["complex"]["cohomology"]] == [3, 0]
    hyper = _report(problems_dir, "hyper_triangle", tmp_path)
    assert {k: v for k, v in hyper["total_dims"].items() if v} == {"0": 1, "1": 2, "2": 1}
    assert hyper["globaxten"] is True
    assert hyper["abutment"] is True


def test_spectral_problem(problems_dir, tmp_path):
    rep = _report(problems_dir, "spectral_staircase", tmp_path)
    assert rep["abutment"] is True
    assert rep["classes"][0]["status"] == "dies"
    assert rep["classes"][0]["page"] == 2


def test_ext_problems(problems_dir, tmp_path):
    assert _report(problems_dir, "ext_residue", tmp_path)["dims"] == [1, 1, 1, 1]
    free = _report(problems_dir, "ext_free", tmp_path)
    assert free["source_free"] is True
    assert free["dim"] == 0
    yon = _report(problems_dir, "yoneda_dual_numbers", tmp_path)
    assert yon["degree"] == 2
    assert yon["zero"] is False


def test_extension_problem(problems_dir, tmp_path):
    rep = _report(problems_dir, "extension_dual_numbers", tmp_path)
    assert rep["split"] is False
    assert rep["second"]["equivalent"] is True
    assert rep["second"]["baer_sum_additive"] is True
    assert rep["pullback"]["split"] is False
    assert rep["pushout"]["split"] is True
    assert rep["pullback_pushout_commute"] is True
    assert rep["from_cocycle"]["round_trip"] is True


def test_obstruction_and_les_problems(problems_dir, tmp_path):
    assert _report(problems_dir, "obstruction_extend", tmp_path)["vanishes"] is False
    assert _report(problems_dir, "obstruction_lift", tmp_path)["vanishes"] is False
    assert _report(problems_dir, "les_dual_numbers", tmp_path)["exact"] is True
    assert _report(problems_dir, "les_vertex", tmp_path)["vertex"]["exact"] is True


def test_correlation_problems(problems_dir, tmp_path):
    point = _report(problems_dir, "correlate_point", tmp_path)
    assert point["value"] == "2"
    assert point["equivalencia"] is True
    assert point["spaces"] == [{"s": 0, "t": 0, "p": 1, "q": 0, "dim": 0}]
    nil = _report(problems_dir, "correlate_nilpotent", tmp_path)
    assert nil["value"] == "0"
    assert nil["routes"]["agree"] is True


def test_verify_from_flags(capsys):
    assert main(["verify", "--suite", "d0", "--quick", "--seed", "3"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["ok"] is True
    assert report["results"]["seed"] == 3


def test_text_and_xlsx_formats(problems_dir, tmp_path, capsys):
    path = str(problems_dir / "ext_residue.json")
    assert main(["ext", "-i", path, "--format", "text"]) == EXIT_OK
    assert "== summary ==" in capsys.readouterr().out
    out = tmp_path / "ext.xlsx"
    assert main(["ext", "-i", path, "--format", "xlsx", "-o", str(out)]) == EXIT_OK
    sheets = read_workbook(out)
    assert "summary" in sheets
    assert "ext" in set(sheets["summary"]["value"])


def test_xlsx_needs_an_output_file(problems_dir, capsys):
    assert main(["run", "-i", str(problems_dir / "ext_residue.json"), "--format", "xlsx"]) == EXIT_ERROR
    assert _error(capsys)["code"] == "INVALID_INPUT"


def test_schema_document(capsys):
    assert main(["schema"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["commands"]) == set(homcat.COMMANDS)
    assert doc["commands"]["d0"]["required"] == ["polys"]


@pytest.mark.parametrize("text, code", [
    ("{not json", "PARSE_ERROR"),
    ('{"command": "d0", "payload": {"polys": [[0, 1]]}, "extra": 1}', "SCHEMA_ERROR"),
    ('{"version": "2", "command": "d0", "payload": {"polys": [[0, 1]]}}', "SCHEMA_ERROR"),
    ('{"command": "d0", "payload": {"polys": [[0, 1]], "colour": "red"}}', "SCHEMA_ERROR"),
    ('{"command": "d0", "payload": {}}', "SCHEMA_ERROR"),
    ('{"command": "cohomology", "payload": {"complex": {"field": "Q", "lo": 0, "dims": [1, 1, 1], '
     '"differentials": [{"rows": 1, "cols": 1, "entries": [1]}, {"rows": 1, "cols": 1, "entries": [1]}]}}}',
     "NOT_A_COMPLEX"),
    ('{"command": "verify", "payload": {"suite": "everything"}}', "UNKNOWN_SUITE"),
    ('{"command": "spectral", "payload": {"double_complex": {"cells": []}, "classes": [{"q": 1, "a": ["1"]}]}}',
     "SCHEMA_ERROR"),
    ('{"command": "spectral", "payload": {"double_complex": {"cells": []}, "classes": {"p": 0}}}', "SCHEMA_ERROR"),
    ('{"command": "les", "payload": {"algebra": "dual_numbers", "nerve": "point", "support": [[0]], "k": 0, '
     '"points": [{"source": {}}]}}', "SCHEMA_ERROR"),
    ('{"command": "extension", "payload": {"algebra": "dual_numbers", "extension": {}, '
     '"pullback": {"module": {"residue": 1}}}}', "SCHEMA_ERROR"),
    ('{"command": "correlate", "payload": {"algebra": "field", "model": {}, "operators": [], "functional": {}, '
     '"spaces": [{"s": 0, "t": 0, "p": 0, "q": 0, "r": 1}]}}', "SCHEMA_ERROR"),
    ('{"command": "spectral", "payload": {"double_complex": {"cells": [{"p": 0, "q": 0}]}}}', "PARSE_ERROR"),
])
def test_errors_exit_with_structured_json(tmp_path, capsys, text, code):
    path = tmp_path / "problem.json"
    path.write_text(text, encoding="utf-8")
    assert main(["run", "-i", str(path)]) == EXIT_ERROR
    err = _error(capsys)
    assert err["code"] == code
    assert err["message"]


def test_nested_errors_name_the_field(tmp_path, capsys):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps({"command": "spectral", "payload": {
        "double_complex": {"cells": []}, "classes": [{"p": 0, "q": 1, "a": [1]}, {"q": 1, "a": [1]}]}}),
        encoding="utf-8")
    assert main(["run", "-i", str(path)]) == EXIT_ERROR
    err = _error(capsys)
    assert err["details"] == {"field": "spectral.classes[1]", "missing": ["p"]}


def test_schema_lists_nested_objects():
    doc = homcat.schema_document()
    assert {"command": "les", "field": "points", "required": ["extension", "source"], "optional": [],
            "list": True} in doc["nested"]


def test_command_must_match_the_file(problems_dir, capsys):
    assert main(["d0", "-i", str(problems_dir / "cech_triangle.json")]) == EXIT_ERROR
    assert _error(capsys)["code"] == "SCHEMA_ERROR"


def test_missing_input_file(tmp_path, capsys):
    assert main(["run", "-i", str(tmp_path / "nope.json")]) == EXIT_ERROR
    assert _error(capsys)["details"]["path"].endswith("nope.json")


def test_timings_are_opt_in():
    problem = ProblemFile.from_json({"command": "cech", "payload": {"presheaf": {"nerve": "point", "constant": 1}}})
    assert "total_ms" in run(problem, timings=True)["timings"]


OPERATIONS = {
    "linalg": {"rank", "kernel_basis", "solve", "induced_on_quotient"},
    "cochain": {"cohomology", "shift", "cone", "cylinder", "connecting", "exactness_check"},
    "homcx": {"hom_complex", "induced_hom_map", "cone_hom_commutes"},
    "algebra": {"free_resolution", "ext_group", "yoneda_product", "hom_space"},
    "koszul": {"quotient_module", "koszul_hom", "d0_ext_dims"},
    "cech": {"cech_complex", "skyscraper_presheaf", "hypercohomology", "globaxten_check", "vertex_space",
             "vertex_les"},
    "spectral": {"pages", "abutment_check", "class_map"},
    "strings": {"pullback_ext", "pushout_ext", "is_equivalent", "baer_sum", "ext_class_of",
                "extension_from_cocycle", "obstruction_extend", "obstruction_lift", "les_report"},
    "correlation": {"correlate", "locally_free_trace", "equivalencia_check"},
    "homcat": {"run"},
    "verify_suites": {"verify_suite"},
}


def test_problem_files_reach_every_operation():
    called = set()

    def profiler(frame, event, arg):
        if event == "call":
            code = frame.f_code
            called.add((Path(code.co_filename).stem, code.co_name))

    sys.setprofile(profiler)
    try:
        for path in PROBLEMS:
            run(load_problem(path))
    finally:
        sys.setprofile(None)
    missing = sorted((mod, op) for mod, ops in OPERATIONS.items() for op in ops if (mod, op) not in called)
    assert missing == []
