"""Report assembly, schema validation and JSON/CSV emission.

A report has a stable section (sorted keys, no clock readings) and a
volatile section (timings, figure paths).  Running a suite twice on the
same spec gives byte-identical stable output.
"""

from __future__ import annotations

import csv
import io
import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

SCHEMA_VERSION = 1


@lru_cache(maxsize=None)
def load_schema(kind):
    """``kind`` is 'spec' or 'report'."""
    text = resources.files("ultracoh").joinpath("schemas", f"{kind}.v{SCHEMA_VERSION}.json")
    return json.loads(text.read_text(encoding="utf-8"))


def validate_spec(spec):
    jsonschema.validate(spec, load_schema("spec"))


def validate_report(report):
    jsonschema.validate(report, load_schema("report"))


def build_report(result, figures=()):
    return {"schema_version": SCHEMA_VERSION, "stable": result.stable(),
            "volatile": {"timing": dict(result.timing), "figures": list(figures)}}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def stable_text(report):
    return dumps(report["stable"])


def _cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True, separators=(",", ":"))
    return x


def _csv_text(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def csv_files(report):
    """{file suffix: text}; the stable part first, timings last."""
    st = report["stable"]
    out = {}
    out[""] = _csv_text(
        ["assertion", "passed", "checked", "failed", "first_failure"],
        [[a["name"], a["passed"], a["checked"], a["failed"],
          a["failures"][0] if a["failures"] else ""] for a in st["assertions"]])
    for name in sorted(st["tables"]):
        t = st["tables"][name]
        out[f"-{name}"] = _csv_text(t["columns"], t["rows"])
    out["-volatile"] = _csv_text(["key", "value"],
                                 sorted(report["volatile"]["timing"].items()))
    return out


def write_report(report, out_dir, fmt="json"):
    """Write the report under ``out_dir``; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    suite = report["stable"]["suite"]
    paths = []
    if fmt == "json":
        path = out_dir / f"{suite}.json"
        path.write_text(dumps(report), encoding="utf-8")
        paths.append(path)
    elif fmt == "csv":
        for suffix, text in csv_files(report).items():
            path = out_dir / f"{suite}{suffix}.csv"
            path.write_text(text, encoding="utf-8")
            paths.append(path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return paths


def read_report(path):
    report = json.loads(Path(path).read_text(encoding="utf-8"))
    validate_report(report)
    return report
