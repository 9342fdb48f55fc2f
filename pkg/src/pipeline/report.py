"""
Report rendering: JSON, CSV and a text layout that mirrors the published
table (W generators, Psi label, count).
"""

import csv
import io
from typing import List

from pydantic import ValidationError

from src.errors import ValidationFailure
from src.storage.models import ClassificationReport, SubReport

FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ["w_generators", "psi_id", "count"]


def _generators_text(generators: List[str]) -> str:
    return "<" + ",".join(generators) + ">" if generators else "<0>"


def _text(report: ClassificationReport) -> str:
    lines = [f"CHW manifolds of dimension {report.n}", ""]
    width = max([len(_generators_text(row.w_generators)) for row in report.rows] + [12])
    lines.append(f"{'W generators':<{width}}  {'Psi':<8}  {'count':>6}")
    lines.append("-" * (width + 18))
    previous = None
    for row in report.rows:
        label = _generators_text(row.w_generators)
        shown = label if label != previous else ""
        previous = label
        lines.append(f"{shown:<{width}}  {row.psi_id:<8}  {row.count:>6}")
    lines.append("-" * (width + 18))
    lines.append(f"{'total':<{width}}  {'':<8}  {report.total:>6}")

    published = report.published
    if published is not None:
        mismatched = [row for row in published.rows if not row.match]
        lines.append("")
        lines.append(
            f"published table: {len(published.rows) - len(mismatched)}/{len(published.rows)} rows match"
        )
        for row in mismatched:
            lines.append(
                f"  {_generators_text(row.w_generators)} {row.psi_id}: "
                f"published {row.published}, computed {row.computed}"
            )
        lines.append(
            f"table sum {published.table_sum}, stated total {published.stated_total}, "
            f"computed total {published.computed_total} (lands on: {published.lands_on})"
        )
    return "\n".join(lines) + "\n"


def _csv(report: ClassificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow([";".join(row.w_generators), row.psi_id, row.count])
    writer.writerow(["total", "", report.total])
    return buffer.getvalue()


def emit_report(report: ClassificationReport, fmt: str = "json") -> bytes:
    """Deterministic serialization of a classification report."""
    if fmt == "json":
        text = report.model_dump_json(indent=2) + "\n"
    elif fmt == "csv":
        text = _csv(report)
    elif fmt == "text":
        text = _text(report)
    else:
        raise ValueError(f"unknown report format: {fmt}")
    return text.encode("utf-8")


def parse_report(data: bytes) -> ClassificationReport:
    """
    Parse a JSON report.

    Raises:
        ValidationFailure: malformed or inconsistent report
    """
    try:
        return ClassificationReport.model_validate_json(data)
    except ValidationError as e:
        raise ValidationFailure(f"invalid classification report: {e.errors()[0]['msg']}")


def emit_sub(report: SubReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (report.model_dump_json(indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format: {fmt}")
    lines = [f"Sub({report.n}): {len(report.classes)} classes"]
    for index, entry in enumerate(report.classes, start=1):
        lines.append(
            f"{index:>3}. {_generators_text(entry.w_generators):<32} "
            f"|W|={entry.order:<3} |S(W)|={entry.stabilizer_order}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
