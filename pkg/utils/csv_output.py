import csv
import io
import math
import os
from typing import Iterable, List, Optional, Sequence, Tuple

from config.settings import CSV_SIGNIFICANT_DIGITS


def format_value(value) -> str:
    """Deterministic text for one CSV cell; floats carry 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, f".{CSV_SIGNIFICANT_DIGITS}g")
    if isinstance(value, (tuple, list)):
        return ":".join(format_value(v) for v in value)
    if hasattr(value, "item"):
        return format_value(value.item())
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def header_line(items: Iterable[Tuple[str, object]]) -> str:
    """The leading ``#`` line naming the probe, methods and parameters."""
    parts = [f"{key}={format_value(value)}".replace(" ", "_") for key, value in items]
    return "# " + " ".join(parts)


def render_csv(items: Iterable[Tuple[str, object]], columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    buffer.write(header_line(items) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def emit(text: str, output: Optional[str], stream) -> None:
    """Write CSV text to ``output`` when given, else to the stream."""
    if output:
        directory = os.path.dirname(os.path.abspath(output))
        os.makedirs(directory, exist_ok=True)
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        stream.write(text)


def parse_rows(text: str) -> Tuple[str, List[str], List[List[str]]]:
    """Split rendered CSV back into header line, columns and rows."""
    lines = text.splitlines()
    reader = csv.reader(lines[1:])
    table = list(reader)
    return lines[0], table[0] if table else [], table[1:]
