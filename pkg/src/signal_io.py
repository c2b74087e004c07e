"""
Signal File Module

This module reads and writes signal files and result tables.

A signal file is UTF-8 comma-separated text with the header "t,v" followed by
one row per sample: time in seconds and value in microvolts. Times must be
strictly increasing and uniformly spaced. Values are written with repr() so a
write followed by a read reproduces every sample exactly.

All writes are atomic: the file is written to a temporary sibling and renamed
over the target.
"""

import csv
import logging
import math
import os
import tempfile
from typing import Any, Callable, Iterable, Sequence, TextIO, Union

import numpy as np

from .errors import SignalFormatError, SignalParseError
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

PathLike = Union[str, "os.PathLike[str]"]

SIGNAL_HEADER = ("t", "v")
SPACING_RTOL = 1e-9
MIN_ROWS = 2


def _parse_float(field: str, name: str, line: int) -> float:
    try:
        value = float(field)
    except ValueError:
        raise SignalParseError(f"{name} {field.strip()!r} is not a number", line) from None
    if not math.isfinite(value):
        raise SignalParseError(f"{name} must be finite, got {field.strip()!r}", line)
    return value


def read_signal(path: PathLike) -> TimeSeries:
    """
    Read a signal file.

    Args:
        path: File to read

    Returns:
        TimeSeries: The samples, starting at the first row's time

    Raises:
        SignalParseError: If a row is malformed (the message names the line)
        SignalFormatError: If the header is wrong, there are fewer than two
            rows, or the times are not uniformly increasing
        OSError: If the file cannot be read
    """
    times, values = [], []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != SIGNAL_HEADER:
            raise SignalFormatError(f"{path}: expected header 't,v', got {','.join(header or [])!r}")
        for row in reader:
            line = reader.line_num
            if not row or all(not field.strip() for field in row):
                continue
            if len(row) != 2:
                raise SignalParseError(f"expected 2 fields, got {len(row)}", line)
            times.append(_parse_float(row[0], "time", line))
            values.append(_parse_float(row[1], "value", line))

    if len(times) < MIN_ROWS:
        raise SignalFormatError(f"{path}: need at least {MIN_ROWS} samples, got {len(times)}")

    t = np.asarray(times)
    dt = (t[-1] - t[0]) / (t.size - 1)
    if not dt > 0:
        raise SignalFormatError(f"{path}: times must be strictly increasing")
    tol = SPACING_RTOL * dt + 4 * np.spacing(max(abs(t[0]), abs(t[-1])))
    steps = np.diff(t)
    worst = int(np.argmax(np.abs(steps - dt)))
    if abs(steps[worst] - dt) > tol:
        raise SignalFormatError(
            f"{path}: non-uniform sampling near row {worst + 2}: step {steps[worst]:.6g} s vs mean {dt:.6g} s"
        )

    logger.debug("read %d samples from %s (dt=%g)", t.size, path, dt)
    return TimeSeries(np.asarray(values), dt, t[0])


def _atomic_write(path: PathLike, fill: Callable[[TextIO], None]) -> None:
    """Write a text file via a temporary sibling and an atomic rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as f:
            fill(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


def write_signal(ts: TimeSeries, path: PathLike) -> None:
    """
    Write a signal file.

    Args:
        ts: Series to write; its values must be finite
        path: Destination, replaced atomically

    Raises:
        SignalFormatError: If the series holds NaN or infinity
    """
    if not np.all(np.isfinite(ts.values)):
        raise SignalFormatError("Signal files cannot hold non-finite samples")
    write_table(path, SIGNAL_HEADER, zip(ts.times, ts.values))
    logger.info("wrote %d samples to %s", len(ts), path)


def write_table(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """
    Write a comma-separated table with a header row.

    Floats are written with repr() so they read back exactly.
    """
    def fill(f: TextIO) -> None:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])

    _atomic_write(path, fill)
