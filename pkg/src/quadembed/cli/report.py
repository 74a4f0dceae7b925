"""JSON reports shared by every subcommand."""

from __future__ import annotations

import json
from importlib import resources

from quadembed import __version__

SCHEMA_VERSION = "1.0"
TOOL = "quadembed"

STATUSES = ("pass", "fail", "inconclusive", "skipped")


def summarize(records: list) -> dict:
    counts = {s: 0 for s in STATUSES}
    for r in records:
        counts[r["status"]] += 1
    return counts


def make_report(field: str, command: list, records: list, result: dict | None = None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "version": __version__,
        "field": field,
        "command": list(command),
        "records": records,
        "summary": summarize(records),
    }
    if result is not None:
        out["result"] = result
    return out


def load_schema() -> dict:
    text = resources.files("quadembed.cli").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def write(report: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(report))
