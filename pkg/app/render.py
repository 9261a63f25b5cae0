"""Output formatting for the command line: JSON lines or a plain table."""

from __future__ import annotations

import json

from core.models import ResidualReport, SweepSummary

TABLE_COLUMNS = ("pass", "residual", "allowance", "gap", "key")


def report_line(report: ResidualReport, output_format: str = "json") -> str:
    if output_format == "json":
        return report.model_dump_json(by_alias=True)
    gap = "" if report.limit_gap is None else f"{report.limit_gap:.3e}"
    cells = (
        "ok" if report.passed else "FAIL",
        f"{report.residual_magnitude:.3e}",
        f"{report.allowance:.3e}",
        gap,
        report.key,
    )
    line = "  ".join(f"{cell:<10}" for cell in cells[:-1]) + "  " + cells[-1]
    if report.detail and not report.passed:
        line += f"\n    {report.detail}"
    return line


def table_header() -> str:
    return "  ".join(f"{name:<10}" for name in TABLE_COLUMNS[:-1]) + "  " + TABLE_COLUMNS[-1]


def summary_line(summary: SweepSummary, output_format: str = "json") -> str:
    body = summary.model_dump(exclude={"reports"})
    if output_format == "json":
        return json.dumps({"summary": body})
    return (
        f"{summary.suite}: {summary.passed}/{summary.total} passed, {summary.failed} failed, "
        f"{summary.errors} errors, {summary.retries} precision rounds, {summary.precision} digits"
    )


def render_sweep(summary: SweepSummary, output_format: str = "json") -> list[str]:
    """Every report in key order, then the closing summary."""
    lines = [table_header()] if output_format == "table" else []
    lines += [report_line(report, output_format) for report in summary.reports]
    lines.append(summary_line(summary, output_format))
    return lines
