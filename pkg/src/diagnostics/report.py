"""Table writers for CSV and JSON output."""
import csv
import json
import logging
import sys
from pathlib import Path
from typing import TextIO

from src.core.config import OutputFormat
from src.core.errors import ConfigError

logger = logging.getLogger(__name__)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(stream: TextIO, rows: list[dict], columns: list[str], fmt: OutputFormat,
           summary: list[dict] | None) -> None:
    if fmt == OutputFormat.JSON:
        payload: dict = {"columns": columns, "rows": rows}
        if summary is not None:
            payload["summary"] = summary
        json.dump(payload, stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    for line in summary or []:
        stream.write("# " + " ".join(f"{k}={_cell(v)}" for k, v in line.items()) + "\n")


def write_table(
    rows: list[dict],
    columns: list[str],
    fmt: OutputFormat = OutputFormat.CSV,
    out: Path | None = None,
    summary: list[dict] | None = None,
) -> None:
    """
    Emit rows with a fixed column order to `out`, or stdout when out is None.

    CSV floats use repr so values survive a round trip; summary lines follow
    the table as '#'-prefixed comments. JSON carries the same rows under
    "rows" and the summary under "summary".
    """
    if out is None:
        _write(sys.stdout, rows, columns, fmt, summary)
        return
    try:
        with open(out, "w", newline="") as f:
            _write(f, rows, columns, fmt, summary)
    except OSError as e:
        raise ConfigError(f"cannot write {out}: {e}") from e
    logger.info("wrote %d rows to %s", len(rows), out)


def columns_of(rows: list[dict]) -> list[str]:
    """Keys of the first row, the column order for generated tables."""
    return list(rows[0]) if rows else []
