# -*- coding: utf-8 -*-
import json

from export_report import main as export_main
from export_report import read_workbook, report_frames, write_workbook

REPORT = {
    "command": "spectral",
    "engine_version": "1.0.0",
    "schema_version": "1",
    "inputs_digest": "ab" * 32,
    "results": {
        "abutment": True,
        "r_max": 3,
        "e_infinity": [{"p": 0, "q": 1, "dim": 0}, {"p": 2, "q": 0, "dim": 0}],
        "total_dims": {"0": 0, "1": 0},
        "text": "E_2\n . 1\n 1 .",
        "pages": [{"r": 2, "cells": [[0, 1, 1]]}],
    },
    "timings": {"total_ms": 1.5},
}


def test_frames_split_scalars_from_sections():
    frames = report_frames(REPORT)
    assert list(frames) == ["summary", "results", "e_infinity", "pages", "text", "total_dims"]
    summary = dict(zip(frames["summary"]["key"], frames["summary"]["value"]))
    assert summary["command"] == "spectral"
    assert summary["timings.total_ms"] == 1.5
    assert list(frames["e_infinity"].columns) == ["p", "q", "dim"]
    assert list(frames["text"]["line"]) == ["E_2", " . 1", " 1 ."]
    assert json.loads(frames["pages"]["cells"][0]) == [[0, 1, 1]]


def test_sheet_names_are_sanitized_and_unique():
    report = {"results": {"a/b": [1], "a_b": [2], "x" * 40: [3]}}
    names = list(report_frames(report))
    assert "a_b" in names and "a_b_1" in names
    assert all(len(n) <= 31 for n in names)


def test_workbook_reads_back(tmp_path):
    out = tmp_path / "report.xlsx"
    write_workbook(REPORT, out)
    sheets = read_workbook(out)
    assert set(sheets) == set(report_frames(REPORT))
    results = dict(zip(sheets["results"]["key"], sheets["results"]["value"]))
    assert results["r_max"] == 3
    assert list(sheets["e_infinity"]["dim"]) == [0, 0]


def test_export_from_report_file(tmp_path, capsys):
    src = tmp_path / "report.json"
    src.write_text(json.dumps(REPORT), encoding="utf-8")
    export_main(str(src), str(tmp_path / "out" / "report.xlsx"))
    assert "OK: wrote report.xlsx" in capsys.readouterr().out
    assert "summary" in read_workbook(tmp_path / "out" / "report.xlsx")
