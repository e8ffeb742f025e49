"""
Report rendering for the CLI.

Every command produces plain records that are rendered either as a rich
terminal table, as CSV, or as JSON. Non-finite values (unreadable beacons)
become null in JSON and "inf" in CSV.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from rich.console import Console
from rich.table import Table

from .models import OutputFormat, ScenarioRow, SweepPoint

logger = logging.getLogger(__name__)

SWEEP_CSV_HEADER = [
    "elevation_rad",
    "start_time_s",
    "ttr_ssr_s",
    "ttr_jdr_s",
    "ttr_eff_ssr_s",
    "ttr_eff_jdr_s",
    "atw_ssr_s",
    "atw_jdr_s",
]

# (header, formatter over a whole record) for table output
Column = Tuple[str, Callable[[Dict[str, Any]], str]]


def json_safe(value: Any) -> Any:
    """Recursively replace non-finite floats by None."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


def render_json(document: Any) -> str:
    """Deterministic, re-parseable JSON text ending in a newline."""
    return json.dumps(json_safe(document), indent=2) + "\n"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(records: Sequence[Dict[str, Any]], keys: Sequence[str]) -> str:
    """CSV text with a header row, full double precision and '\\n' line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(keys)
    for record in records:
        writer.writerow([_csv_cell(record.get(key)) for key in keys])
    return buffer.getvalue()


def render_rich_table(
    title: str,
    columns: Sequence[Column],
    records: Sequence[Dict[str, Any]],
    footnotes: Sequence[str] = (),
) -> str:
    """Render records as a fixed-width rich table followed by footnotes."""
    table = Table(title=title)
    for header, _ in columns:
        table.add_column(header)
    for record in records:
        table.add_row(*(formatter(record) for _, formatter in columns))

    console = Console(width=160, color_system=None, highlight=False, force_terminal=False)
    with console.capture() as capture:
        console.print(table)
        for note in footnotes:
            console.print(note, markup=False)
    return capture.get()


def fmt_number(value: Optional[float], digits: int = 2) -> str:
    """Fixed-point number, or 'unreadable' for an infinite time."""
    if value is None or (isinstance(value, float) and math.isinf(value)):
        return "unreadable"
    return f"{value:.{digits}f}"


def render_records(
    fmt: OutputFormat,
    title: str,
    columns: Sequence[Column],
    records: Sequence[Dict[str, Any]],
    keys: Sequence[str],
    footnotes: Sequence[str] = (),
) -> str:
    """Dispatch a flat record list to the selected output format."""
    if fmt is OutputFormat.JSON:
        return render_json(list(records))
    if fmt is OutputFormat.CSV:
        return render_csv(records, keys)
    return render_rich_table(title, columns, records, footnotes)


def render_table2(rows: Sequence[ScenarioRow], fmt: OutputFormat, footnotes: Sequence[str] = ()) -> str:
    """Scenario comparison in the published column layout."""
    records = [row.to_dict() for row in rows]
    columns: List[Column] = [
        ("Scenario", lambda r: r["name"]),
        ("Dist. (km)", lambda r: f"{r['distance'] / 1e3:,.0f}"),
        ("Extra (dB)", lambda r: f"{r['extra_loss']:g}"),
        ("Capacity C/Q (bit/s)",
         lambda r: f"{fmt_number(r['capacity_classical'])} / {fmt_number(r['capacity_quantum'])}"),
        ("TTR C/Q (s)",
         lambda r: f"{fmt_number(r['ttr_classical'])} / {fmt_number(r['ttr_quantum'])}"),
        ("Note", lambda r: r["note"]),
    ]
    keys = list(records[0].keys()) if records else []
    return render_records(fmt, "Performance comparison: classical vs quantum", columns,
                          records, keys, footnotes)


def sweep_csv(points: Sequence[SweepPoint]) -> str:
    """Sweep samples in the documented CSV schema."""
    records = [
        {
            "elevation_rad": p.start_elevation,
            "start_time_s": p.start_time,
            "ttr_ssr_s": p.ttr_classical,
            "ttr_jdr_s": p.ttr_quantum,
            "ttr_eff_ssr_s": p.ttr_effective_classical,
            "ttr_eff_jdr_s": p.ttr_effective_quantum,
            "atw_ssr_s": p.atw_classical,
            "atw_jdr_s": p.atw_quantum,
        }
        for p in points
    ]
    return render_csv(records, SWEEP_CSV_HEADER)


def render_sweep(
    points: Sequence[SweepPoint],
    fmt: OutputFormat,
    title: str,
    footnotes: Sequence[str] = (),
) -> str:
    """Sweep samples as a rich table, as CSV or as JSON records."""
    if fmt is OutputFormat.JSON:
        return render_json([p.to_dict() for p in points])
    if fmt is OutputFormat.CSV:
        return sweep_csv(points)
    columns: List[Column] = [
        ("Elevation (rad)", lambda r: f"{r['start_elevation']:.4f}"),
        ("Start (s)", lambda r: f"{r['start_time']:.1f}"),
        ("TTR SSR (s)", lambda r: fmt_number(r["ttr_classical"])),
        ("TTR JDR (s)", lambda r: fmt_number(r["ttr_quantum"])),
        ("Eff. TTR SSR (s)", lambda r: fmt_number(r["ttr_effective_classical"])),
        ("Eff. TTR JDR (s)", lambda r: fmt_number(r["ttr_effective_quantum"])),
        ("ATW SSR (s)", lambda r: fmt_number(r["atw_classical"])),
        ("ATW JDR (s)", lambda r: fmt_number(r["atw_quantum"])),
    ]
    return render_rich_table(title, columns, [p.to_dict() for p in points], footnotes)


def write_text(path: Union[str, Path], text: str) -> None:
    """Write a report file; the error message names the path."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote {path}")
