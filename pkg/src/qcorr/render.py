"""Text, CSV and JSON output for tables and run reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Union

import numpy as np

from .correlation import CorrelationTable, rational_guess
from .observables import format_label
from .probability import ProbabilityTable

DISPLAY_ZERO = 1e-12

Table = Union[ProbabilityTable, CorrelationTable]


def display_value(x: float) -> float:
    return 0.0 if abs(x) < DISPLAY_ZERO else float(x)


def format_number(x) -> str:
    """Six significant digits plus a rational guess, e.g. ``0.208333 (5/24)``."""
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return "UNDEF"
    x = display_value(x)
    s = f"{x:.6g}"
    f = rational_guess(x)
    if f is not None and f.denominator != 1:
        s += f" ({f})"
    return s


def _header(t: Table) -> list[str]:
    return [f"axis{i + 1}" for i in range(t.grid.ndim)]


def table_rows(t: Table) -> list[dict]:
    rows = []
    for outcome, v in t.items():
        labels = [format_label(x) for x in outcome]
        if isinstance(t, CorrelationTable):
            rows.append({
                "outcome": labels,
                "phi": None if v is None else display_value(v),
                "undefined": v is None,
            })
        else:
            rows.append({"outcome": labels, "p": display_value(v)})
    return rows


def table_to_json(t: Table) -> list[dict]:
    return table_rows(t)


def table_to_csv(t: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(t, CorrelationTable):
        w.writerow(_header(t) + ["phi", "undefined"])
        for r in table_rows(t):
            w.writerow(r["outcome"] + ["" if r["undefined"] else repr(r["phi"]),
                                       str(r["undefined"]).lower()])
    else:
        w.writerow(_header(t) + ["p"])
        for r in table_rows(t):
            w.writerow(r["outcome"] + [repr(r["p"])])
    return buf.getvalue()


def report_to_json(report) -> dict:
    out = {
        "name": report.name,
        "passed": report.passed,
        "tables": {k: table_to_json(t) for k, t in report.tables().items()},
        "marginals": [table_to_json(m) for m in report.marginals],
        "quantum_correlated": report.quantum_correlated,
        "product_rule": report.product_rule,
        "deviations": {k: (None if np.isinf(v) else v) for k, v in report.deviations.items()},
    }
    if report.flag_mismatches:
        out["flag_mismatches"] = report.flag_mismatches
    return out


def report_to_csv_blocks(report) -> dict[str, str]:
    """One CSV document per table, keyed ``<scenario>_<table>``."""
    return {f"{report.name}_{k}": table_to_csv(t) for k, t in report.tables().items()}


def report_to_text(report) -> str:
    tables = report.tables()
    names = list(tables)
    lines = [f"== {report.name} =="]
    head = ["outcome"] + names
    body = []
    for outcome in report.grid.outcomes():
        cells = ["(" + ", ".join(format_label(x) for x in outcome) + ")"]
        cells += [format_number(tables[k][outcome]) for k in names]
        body.append(cells)
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    for r in [head] + body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    for i, m in enumerate(report.marginals):
        vals = ", ".join(f"{format_label(o[0])}: {format_number(v)}" for o, v in m.items())
        lines.append(f"marginal axis{i + 1}: {vals}")
    if report.quantum_correlated is not None:
        lines.append(f"quantum correlated: {report.quantum_correlated}")
        lines.append(f"product rule holds: {report.product_rule}")
    if report.deviations:
        worst = max(report.deviations.values())
        lines.append(f"max golden deviation: {worst:.3g}")
    if report.deviations or report.flag_mismatches:
        lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
