"""Error-report assembly and serialization.

A report is a flat list of (dataset, column, reference, p, method) rows with
their lp errors, plus run parameters, optional assumption notes, and the
result of the dominance check.  JSON output uses canonical key order; CSV
output is long-format with per-group total rows appended, so both the
per-column and the summed readings of an error table can be checked.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..decomposition import decompose

__all__ = [
    "KNOWN_METHODS",
    "ReportEntry",
    "SpecificationReport",
    "format_p",
    "write_report",
    "ecdf_points",
]

KNOWN_METHODS = ("algorithm1", "algorithm2", "estimation_baseline")


def format_p(p) -> str:
    """Serialize a norm order: '1', '2', 'inf', or the shortest float repr."""
    p = float(p)
    if math.isinf(p):
        return "inf"
    if p == int(p):
        return str(int(p))
    return repr(p)


@dataclass(frozen=True)
class ReportEntry:
    """One measured error: dataset column vs reference under one method."""

    dataset: str
    column: str
    reference: str
    p: float
    method: str
    error: float
    n: int
    m: int
    warnings: tuple = ()

    def __post_init__(self):
        if self.method not in KNOWN_METHODS:
            raise ValueError(
                f"unknown method {self.method!r}, expected one of {KNOWN_METHODS}"
            )
        if not self.error >= 0.0:
            raise ValueError(f"error must be nonnegative, got {self.error}")
        object.__setattr__(self, "warnings", tuple(self.warnings))


@dataclass(frozen=True)
class SpecificationReport:
    entries: tuple = ()
    parameters: dict = field(default_factory=dict)
    dominance: bool | None = None
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "notes", tuple(self.notes))

    def totals(self):
        """Per (dataset, reference, p, method) error sums across columns."""
        sums = {}
        for e in self.entries:
            key = (e.dataset, e.reference, format_p(e.p), e.method)
            sums[key] = sums.get(key, 0.0) + float(e.error)
        return [
            {
                "dataset": k[0],
                "reference": k[1],
                "p": k[2],
                "method": k[3],
                "error": v,
            }
            for k, v in sorted(sums.items())
        ]


def _entry_dict(e: ReportEntry) -> dict:
    return {
        "dataset": e.dataset,
        "column": e.column,
        "reference": e.reference,
        "p": format_p(e.p),
        "method": e.method,
        "error": float(e.error),
        "n": int(e.n),
        "m": int(e.m),
        "warnings": list(e.warnings),
    }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def write_report(report: SpecificationReport, fmt: str = "json", destination=None) -> bytes:
    """Serialize a report deterministically as JSON or long-format CSV.

    Returns the bytes; additionally writes them when destination is a path
    or binary file-like object.
    """
    if fmt == "json":
        doc = {
            "dominance": report.dominance,
            "entries": [_entry_dict(e) for e in report.entries],
            "notes": list(report.notes),
            "parameters": _jsonable(report.parameters),
            "totals": report.totals(),
        }
        payload = (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    elif fmt == "csv":
        buf = _stdio.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["dataset", "column", "reference", "p", "method", "error", "n", "m", "warnings"]
        )
        for e in report.entries:
            d = _entry_dict(e)
            writer.writerow(
                [
                    d["dataset"],
                    d["column"],
                    d["reference"],
                    d["p"],
                    d["method"],
                    repr(d["error"]),
                    d["n"],
                    d["m"],
                    ";".join(d["warnings"]),
                ]
            )
        for t in report.totals():
            writer.writerow(
                [
                    t["dataset"],
                    "(total)",
                    t["reference"],
                    t["p"],
                    t["method"],
                    repr(t["error"]),
                    "",
                    "",
                    "",
                ]
            )
        payload = buf.getvalue().encode("utf-8")
    else:
        raise ValueError(f"unknown report format {fmt!r}, expected 'json' or 'csv'")

    if destination is not None:
        if isinstance(destination, (str, os.PathLike)):
            Path(destination).write_bytes(payload)
        else:
            destination.write(payload)
    return payload


def ecdf_points(values):
    """Empirical CDF as (unique sorted values, cumulative fractions).

    Fractions are cumulative counts over n, so the last fraction is exactly 1
    and each jump has size count/n: the right-continuous step function.
    """
    dec = decompose(np.asarray(values).ravel())
    fractions = np.cumsum(dec.psi) / dec.n
    return dec.e, fractions
