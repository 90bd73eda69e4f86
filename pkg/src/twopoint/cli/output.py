"""Machine-readable report documents."""
from __future__ import annotations

import csv
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Final, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from twopoint.cli.config import RunConfig

__all__ = ("SCHEMA_VERSION", "CheckRow", "CSV_FIELDS", "build_document", "write_report", "summary_path", "to_json")

log = logging.getLogger(__name__)

SCHEMA_VERSION: Final = 1
CSV_FIELDS: Final = ("point_index", "point", "check", "value", "tolerance", "status")


class CheckRow(NamedTuple):
    """One (point, check) line of a report."""

    point_index: int
    point: Sequence[float]
    check: str
    value: float
    tolerance: float | None
    status: str

    def to_record(self) -> dict[str, Any]:
        return {
            "point_index": self.point_index,
            "point": ";".join(f"{c:.17g}" for c in self.point),
            "check": self.check,
            "value": self.value,
            "tolerance": self.tolerance,
            "status": self.status,
        }


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def build_document(
    command: str,
    config: RunConfig,
    results: Iterable[Mapping[str, Any]],
    summary: Mapping[str, Any],
    generated_at: datetime | None = None,
) -> dict[str, Any]:
    stamp = generated_at or datetime.now(timezone.utc)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config_echo": config.to_record(),
        "results": list(results),
        "summary": dict(summary),
        "generated_at": stamp.isoformat(),
    }


def to_json(document: Mapping[str, Any]) -> str:
    return json.dumps(document, indent=2, default=_jsonable, allow_nan=True)


def summary_path(path: Path) -> Path:
    """Sibling of a CSV report holding one summary row per point."""
    return path.with_name(f"{path.stem}.summary{path.suffix or '.csv'}")


def _write_csv(path: Path, fieldnames: Sequence[str], records: Iterable[Mapping[str, Any]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames))
        writer.writeheader()
        writer.writerows(records)


def write_report(
    path: Path,
    fmt: str,
    document: Mapping[str, Any],
    rows: Sequence[CheckRow],
    summary_rows: Sequence[Mapping[str, Any]] = (),
) -> Path:
    """
    Write the JSON document, or the per-(point, check) rows as CSV.

    With CSV output and ``summary_rows``, the per-point summaries go to
    :func:`summary_path` next to ``path``.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(to_json(document) + "\n", encoding="utf-8")
    else:
        _write_csv(path, CSV_FIELDS, (row.to_record() for row in rows))
        if summary_rows:
            columns = list(dict.fromkeys(k for r in summary_rows for k in r))
            _write_csv(summary_path(path), columns, summary_rows)
            log.info("Wrote %d summary rows to %s", len(summary_rows), summary_path(path))
    log.info("Wrote %s report to %s", fmt, path)
    return path
