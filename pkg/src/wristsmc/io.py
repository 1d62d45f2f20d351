"""Writers for time series and reports."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .harness import COLUMNS, RunRecord


def _cell(value) -> str:
    value = float(value)
    if math.isnan(value):
        return ""
    return repr(value)


def write_timeseries_csv(record: RunRecord, path) -> Path:
    """One row per sample; blank controller-internal cells for PID runs."""
    path = Path(path)
    cols = [np.asarray(record.columns[name]) for name in COLUMNS]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in zip(*cols):
            writer.writerow([_cell(v) for v in row])
    return path


def timeseries_dict(record: RunRecord) -> dict:
    return {name: [None if math.isnan(v) else v for v in map(float, record.columns[name])]
            for name in COLUMNS}


def write_timeseries_json(record: RunRecord, path) -> Path:
    return write_json(timeseries_dict(record), path)


def write_json(payload, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    return path


def write_run(record: RunRecord, out_dir, stem: str = "run", fmt: str = "csv") -> dict:
    """Write the time series (csv or json) and the summary report."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        series = write_timeseries_csv(record, out_dir / f"{stem}.csv")
    else:
        series = write_timeseries_json(record, out_dir / f"{stem}.json")
    summary = write_json(record.summary(), out_dir / f"{stem}_summary.json")
    return {"timeseries": series, "summary": summary}
