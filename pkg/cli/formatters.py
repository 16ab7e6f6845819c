"""Render reports as text, CSV or JSON records."""

from __future__ import annotations

import csv
import io

from models.schemas import Command, OutputFormat, Report

CSV_FIELDS = ("command", "formula", "weights", "inputs", "lhs", "rhs", "result", "verdict", "note")


def _inputs_text(report: Report) -> str:
    return " ".join(f"{k}={v}" for k, v in report.inputs.items())


def render_text(report: Report) -> str:
    if report.command is not Command.VERIFY:
        return f"{report.result}\n"
    lines = [
        f"{r.suite.value} {r.inputs}: lhs={r.lhs} rhs={r.rhs} {'ok' if r.verdict else 'FAIL'}"
        + (f" ({r.note})" if r.note and not r.verdict else "")
        for r in report.records
    ]
    lines.append(f"{report.passed}/{len(report.records)} checks passed")
    return "\n".join(lines) + "\n"


def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    base = [report.command.value, report.formula, report.weights or ""]
    if report.command is not Command.VERIFY:
        writer.writerow(base + [_inputs_text(report), "", "", report.result, "", ""])
    for r in report.records:
        writer.writerow(base + [r.inputs, r.lhs, r.rhs, "", "ok" if r.verdict else "FAIL", r.note])
    return buffer.getvalue()


def render_records(report: Report) -> str:
    return report.model_dump_json(exclude={"elapsed_ms"}) + "\n"


RENDERERS = {
    OutputFormat.TEXT: render_text,
    OutputFormat.CSV: render_csv,
    OutputFormat.RECORDS: render_records,
}


def render(report: Report, output_format: OutputFormat) -> str:
    return RENDERERS[output_format](report)
