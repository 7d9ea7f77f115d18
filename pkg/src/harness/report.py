"""JSON-lines and CSV rendering of run reports."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, TextIO

import pandas as pd

from .checks import CHECKS, get_check_label
from .suite import RunReport

logger = logging.getLogger(__name__)

TIMING_FIELDS = ("elapsed_s", "wall_clock_s")


def report_lines(report: RunReport, timing: bool = True) -> list[str]:
    """One JSON object per trial in order, then the aggregate record."""
    rows = [r.to_dict() for r in report.records] + [report.aggregate()]
    if not timing:
        rows = [strip_timing(row) for row in rows]
    return [json.dumps(row, sort_keys=True, default=str) for row in rows]


def records_frame(report: RunReport) -> pd.DataFrame:
    """Flat per-trial table; nested details become dotted columns."""
    rows = [r.to_dict() for r in report.records]
    if not rows:
        return pd.DataFrame(columns=["suite", "check", "index", "status", "cases"])
    for row in rows:
        row["counterexample"] = json.dumps(row["counterexample"], sort_keys=True, default=str) \
            if row["counterexample"] is not None else None
        row["generator"] = json.dumps(row["generator"], sort_keys=True) \
            if row["generator"] is not None else None
    df = pd.json_normalize(rows, sep=".")
    return df.drop(columns=["type"])


def aggregate_frame(report: RunReport) -> pd.DataFrame:
    """Per-suite status counts with the check's label and category."""
    df = records_frame(report)
    if df.empty:
        return pd.DataFrame(columns=["suite", "check", "label", "category", "trials"])
    counts = pd.crosstab(df["suite"], df["status"])
    for status in ("pass", "fail", "skip", "error"):
        if status not in counts.columns:
            counts[status] = 0
    summary = df.groupby("suite").agg(check=("check", "first"), trials=("index", "count"),
                                      cases=("cases", "sum"))
    out = summary.join(counts[["pass", "fail", "skip", "error"]]).reset_index()
    out["label"] = out["check"].map(get_check_label)
    out["category"] = out["check"].map(lambda c: CHECKS.get(c, {}).get("category", ""))
    return out


def write_report(report: RunReport, out: Optional[str | Path], fmt: str = "json",
                 stream: Optional[TextIO] = None, timing: bool = True) -> None:
    """Write to ``out`` when given, else to ``stream``; ``timing=False`` drops wall-clock fields."""
    if fmt == "csv":
        df = records_frame(report)
        if not timing:
            df = df.drop(columns=[c for c in TIMING_FIELDS if c in df.columns])
        text = df.to_csv(index=False)
    elif fmt == "json":
        text = "".join(line + "\n" for line in report_lines(report, timing))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out is not None:
        Path(out).write_text(text)
        logger.info("Wrote %s report to %s", fmt, out)
    elif stream is not None:
        stream.write(text)


def strip_timing(row: dict[str, Any]) -> dict[str, Any]:
    """Copy of a report row without wall-clock fields, for replay comparisons."""
    return {k: v for k, v in row.items() if k not in TIMING_FIELDS}
