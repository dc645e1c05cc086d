# -*- coding: utf-8 -*-
# Streamlit workbench: upload or edit a problem file, run it, download the report.
import datetime as dt
import json
import re
from io import BytesIO
from pathlib import Path

import pandas as pd
import streamlit as st

from errors import HomcatError
from export_report import report_frames, write_workbook
from homcat import COMMANDS, PAYLOAD_SCHEMAS, SCHEMA_VERSION, ProblemFile, dump_json, render_text, run
from verify_suites import RANDOM_SEED, SUITE_NAMES

ROOT = Path(__file__).parent.resolve()
PROBLEMS_DIR = ROOT / "problems"
XLSX_MIME = "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet"


def _timestamped(base: str, ext: str) -> str:
    ts = dt.datetime.now().strftime("%Y%m%d_%H%M%S")
    safe = re.sub(r"[^A-Za-z0-9_\-\.]+", "_", base)
    return f"{safe}_{ts}{ext}"


def _sample_problems():
    if not PROBLEMS_DIR.exists():
        return {}
    return {p.stem: p for p in sorted(PROBLEMS_DIR.glob("*.json"))}


def _workbook_bytes(report) -> bytes:
    output = BytesIO()
    write_workbook(report, output)
    output.seek(0)
    return output.getvalue()


def _show_report(report, stem: str):
    frames = report_frames(report)
    tab_tables, tab_json, tab_text = st.tabs(["Tables", "JSON", "Text"])
    with tab_tables:
        for name, df in frames.items():
            with st.expander(name, expanded=name in ("summary", "results")):
                st.dataframe(df, use_container_width=True)
    with tab_json:
        st.json(report)
    with tab_text:
        st.code(render_text(report), language="text")
    c1, c2, c3 = st.columns(3)
    with c1:
        st.download_button("Download JSON", data=dump_json(report).encode("utf-8"),
                           file_name=_timestamped(stem, ".json"), mime="application/json")
    with c2:
        st.download_button("Download text", data=render_text(report).encode("utf-8"),
                           file_name=_timestamped(stem, ".txt"), mime="text/plain")
    with c3:
        st.download_button("Download xlsx", data=_workbook_bytes(report),
                           file_name=_timestamped(stem, ".xlsx"), mime=XLSX_MIME, type="primary")


def _run_problem(obj, timings: bool):
    try:
        problem = ProblemFile.from_json(obj)
        return run(problem, timings=timings), None
    except HomcatError as exc:
        return None, exc


st.set_page_config(page_title="homcat workbench", page_icon="🧮", layout="wide")
st.title("homcat: exact homological algebra workbench")

with st.sidebar:
    st.header("Problem")
    samples = _sample_problems()
    choice = st.selectbox("Sample problem", ["(none)"] + list(samples), index=0)
    uploaded = st.file_uploader("…or upload a problem file", type=["json"], key="uploader_problem")
    timings = st.checkbox("Record timings", value=False)
    with st.expander("Payload schemas", expanded=False):
        for cmd in COMMANDS:
            schema = PAYLOAD_SCHEMAS[cmd]
            st.markdown(f"**{cmd}**: {schema['description']}")
            st.caption(f"required: {', '.join(schema['required']) or '—'} · "
                       f"optional: {', '.join(schema['optional']) or '—'}")

tab_problem, tab_verify = st.tabs(["Run a problem", "Verify suites"])

with tab_problem:
    if uploaded is not None:
        initial, stem = uploaded.getvalue().decode("utf-8"), Path(uploaded.name).stem
    elif choice != "(none)":
        initial, stem = samples[choice].read_text(encoding="utf-8"), choice
    else:
        initial = json.dumps({"version": SCHEMA_VERSION, "command": "d0",
                              "payload": {"n": 2, "polys": [[0, -1, 1], [0, 1]]}}, indent=2)
        stem = "problem"
    text = st.text_area("Problem file (JSON)", value=initial, height=320, key=f"editor_{stem}")
    if st.button("Run", type="primary"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            st.error(f"Invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})")
        else:
            report, err = _run_problem(obj, timings)
            if err is not None:
                st.error(f"{err.code}: {err.message}")
                if err.details:
                    st.json(err.details)
            else:
                st.session_state["last_report"] = report
                st.session_state["last_stem"] = stem
    if st.session_state.get("last_report"):
        report = st.session_state["last_report"]
        st.success(f"Command {report['command']} finished · digest {report['inputs_digest'][:12]}")
        _show_report(report, f"{st.session_state.get('last_stem', 'report')}_{report['command']}")

with tab_verify:
    col_a, col_b, col_c = st.columns([1, 1, 1])
    with col_a:
        suite = st.selectbox("Suite", list(SUITE_NAMES), index=0)
    with col_b:
        seed = st.number_input("Seed", value=RANDOM_SEED, step=1)
    with col_c:
        quick = st.checkbox("Quick (small instance counts)", value=True)
    if st.button("Run suite"):
        with st.spinner(f"Running {suite}…"):
            report, err = _run_problem(
                {"command": "verify", "payload": {"suite": suite, "seed": int(seed), "quick": quick}}, timings)
        if err is not None:
            st.error(f"{err.code}: {err.message}")
        else:
            results = report["results"]
            if results["ok"]:
                st.success(f"{results['passed']} checks passed")
            else:
                st.error(f"{results['failed']} checks failed, {results['passed']} passed")
            props = pd.DataFrame(results["properties"])
            st.dataframe(props, use_container_width=True)
            _show_report(report, f"verify_{suite}")
