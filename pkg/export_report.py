# -*- coding: utf-8 -*-
"""
export_report.py
================
Reports as tables.

  • report_frames(report) -> {sheet name: DataFrame}
  • write_workbook(report, output_excel)   (one sheet per results section)
  • read_workbook(path) -> {sheet name: DataFrame}
  • CLI: python export_report.py -i report.json -o report.xlsx

Sheet ``summary`` holds the command echo, digest and versions; every key of
``results`` gets its own sheet. Nested values are written as canonical JSON
strings so that a workbook read back compares cell for cell.
"""
from __future__ import annotations

import argparse
import json
import re
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd

SUMMARY_KEYS = ("command", "engine_version", "schema_version", "inputs_digest")
MAX_SHEET_NAME = 31


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return value


def _frame(value: Any) -> pd.DataFrame:
    if isinstance(value, str):
        return pd.DataFrame({"line": value.splitlines() or [""]})
    if isinstance(value, list):
        if value and all(isinstance(v, dict) for v in value):
            df = pd.json_normalize(value)
            return df.apply(lambda col: col.map(_cell))
        return pd.DataFrame({"index": list(range(len(value))), "value": [_cell(v) for v in value]})
    if isinstance(value, dict):
        if not value:
            return pd.DataFrame(columns=["key", "value"])
        flat = pd.json_normalize(value).iloc[0]
        return pd.DataFrame({"key": list(flat.index), "value": [_cell(v) for v in flat.values]})
    return pd.DataFrame({"value": [value]})


def _is_scalar(value: Any) -> bool:
    if isinstance(value, str):
        return "\n" not in value
    return not isinstance(value, (dict, list, tuple))


def _sheet_name(name: str, taken: set) -> str:
    base = re.sub(r"[\[\]:*?/\\]", "_", name)[:MAX_SHEET_NAME] or "sheet"
    out, k = base, 1
    while out.lower() in taken:
        suffix = f"_{k}"
        out = base[:MAX_SHEET_NAME - len(suffix)] + suffix
        k += 1
    taken.add(out.lower())
    return out


def report_frames(report: Dict[str, Any]) -> Dict[str, pd.DataFrame]:
    taken: set = set()
    frames: Dict[str, pd.DataFrame] = {}
    summary = [{"key": k, "value": report.get(k, "")} for k in SUMMARY_KEYS]
    summary += [{"key": f"timings.{k}", "value": v} for k, v in sorted(report.get("timings", {}).items())]
    frames[_sheet_name("summary", taken)] = pd.DataFrame(summary, columns=["key", "value"])
    results = report.get("results", {})
    scalars = {k: v for k, v in results.items() if _is_scalar(v)}
    if scalars:
        frames[_sheet_name("results", taken)] = _frame(scalars)
    for key in sorted(results):
        if key in scalars:
            continue
        frames[_sheet_name(key, taken)] = _frame(results[key])
    return frames


def write_workbook(report: Dict[str, Any], output_excel: Union[str, Path, Any]) -> None:
    """Write every frame of the report to its own sheet (xlsxwriter)."""
    with pd.ExcelWriter(output_excel, engine="xlsxwriter") as w:
        for name, df in report_frames(report).items():
            df.to_excel(w, sheet_name=name[:MAX_SHEET_NAME], index=False)


def read_workbook(path: Union[str, Path, Any]) -> Dict[str, pd.DataFrame]:
    return pd.read_excel(path, sheet_name=None, engine="openpyxl")


def main(report_json: str, out_xlsx: str) -> None:
    in_path = Path(report_json)
    if not in_path.exists():
        raise FileNotFoundError(f"report not found: {in_path}")
    report = json.loads(in_path.read_text(encoding="utf-8"))
    out_path = Path(out_xlsx)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_workbook(report, out_path)
    print(f"OK: wrote {out_path.name}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Export a homcat JSON report to an Excel workbook.")
    parser.add_argument("-i", "--in", dest="inp", required=True, help="report JSON")
    parser.add_argument("-o", "--out", dest="out", required=True, help="output .xlsx")
    args = parser.parse_args()
    main(args.inp, args.out)
