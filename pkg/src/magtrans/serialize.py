"""Reading and writing of result artifacts.

Artifacts are plain text. Floats are written with the shortest decimal
representation that reads back to the same value, missing values as
``NA``, and lines end in ``\\n``, so equal results give byte-identical
files. Comment lines start with ``#``.

"""

import csv
import logging
import math
from pathlib import Path

import numpy as np
from more_itertools import zip_equal

from .errors import ArtifactError, ParameterError
from .fit import MeasuredTrace
from .sweep import ScanResult, SpectrumMap, SweepAxis

__all__ = [
    "SCHEMA_VERSION",
    "MISSING",
    "format_float",
    "write_table",
    "read_table",
    "mask_path",
    "serialize_map",
    "parse_map",
    "write_scan",
    "read_scan",
    "write_fit",
    "write_report",
    "read_trace",
]

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MISSING = "NA"


def format_float(x):
    """Shortest round-tripping decimal of `x`, or ``NA`` if not finite."""
    x = float(x)
    if not math.isfinite(x):
        return MISSING
    return repr(x)


def _parse_float(text):
    return math.nan if text == MISSING else float(text)


def write_table(path, header, rows, comments=()):
    """
    Write comment lines, a header row and data rows as CSV.

    Raises
    ------
    ArtifactError
        If the file cannot be written.

    """
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            for line in comments:
                f.write("# {}\n".format(line))
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise ArtifactError("cannot write {}: {}".format(path, e)) from None
    logger.debug("wrote %s", path)
    return path


def read_table(path):
    """
    Read a file written by :func:`write_table`.

    Returns
    -------
    meta : dict of str to str
        ``key: value`` comment lines.
    header : list of str
    rows : list of list of str

    """
    path = Path(path)
    meta = {}
    data = []
    try:
        with open(path, newline="", encoding="utf-8") as f:
            for line in f:
                if line.startswith("#"):
                    key, sep, value = line[1:].partition(":")
                    if sep:
                        meta[key.strip()] = value.strip()
                elif line.strip():
                    data.append(line)
    except OSError as e:
        raise ArtifactError("cannot read {}: {}".format(path, e)) from None
    rows = list(csv.reader(data))
    if not rows:
        raise ArtifactError("{} has no header row".format(path))
    return meta, rows[0], rows[1:]


def _check_version(meta, path):
    if meta.get("schema_version") != str(SCHEMA_VERSION):
        raise ArtifactError(
            "{} has unsupported schema_version {!r}".format(
                path, meta.get("schema_version")
            )
        )


def _format_axis(axis):
    return "name={} unit={} start={} stop={} points={}".format(
        axis.name,
        axis.unit,
        format_float(axis.start),
        format_float(axis.stop),
        axis.points,
    )


def _parse_axis(text):
    fields = dict(item.split("=", 1) for item in text.split())
    return SweepAxis(
        name=fields["name"],
        start=float(fields["start"]),
        stop=float(fields["stop"]),
        points=int(fields["points"]),
        unit=fields["unit"],
    )


def mask_path(path):
    """Sidecar file listing the validity of every map cell."""
    path = Path(path)
    return path.with_name(path.name + ".mask.csv")


def serialize_map(smap, path):
    """
    Write a map with one row per cell.

    Rows run over the inner (frequency) axis first. Invalid cells are
    written as ``NA``; if there are any, a sidecar file named by
    :func:`mask_path` holds a 0/1 validity matrix with one line per
    outer-axis sample. A stale sidecar is removed.

    Returns
    -------
    list of Path
        Files written.

    """
    path = Path(path)
    xs = smap.x_axis.values
    ys = smap.y_axis.values
    complex_values = smap.kind.is_complex
    if complex_values:
        header = ["x", "y", "re", "im"]
    else:
        header = ["x", "y", "value"]
    rows = []
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            row = [format_float(x), format_float(y)]
            v = smap.values[i, j]
            if not smap.valid[i, j]:
                row += [MISSING] * (len(header) - 2)
            elif complex_values:
                row += [format_float(v.real), format_float(v.imag)]
            else:
                row.append(format_float(v))
            rows.append(row)
    comments = [
        "schema_version: {}".format(SCHEMA_VERSION),
        "kind: {}".format(smap.kind.value),
        "x_axis: {}".format(_format_axis(smap.x_axis)),
        "y_axis: {}".format(_format_axis(smap.y_axis)),
        "poisoned: {}".format(smap.poisoned),
    ]
    written = [write_table(path, header, rows, comments)]
    sidecar = mask_path(path)
    if smap.poisoned:
        written.append(
            write_table(
                sidecar,
                ["valid"] * smap.y_axis.points,
                smap.valid.astype(int).tolist(),
                ["schema_version: {}".format(SCHEMA_VERSION)],
            )
        )
    elif sidecar.exists():
        sidecar.unlink()
    return written


def parse_map(path):
    """
    Read a map written by :func:`serialize_map`.

    Raises
    ------
    ArtifactError
        If the file is malformed, or if it holds ``NA`` cells that
        disagree with the validity sidecar.

    """
    path = Path(path)
    meta, header, rows = read_table(path)
    _check_version(meta, path)
    try:
        x_axis = _parse_axis(meta["x_axis"])
        y_axis = _parse_axis(meta["y_axis"])
        kind = meta["kind"]
        width = len(header) - 2
        if len(rows) != x_axis.points * y_axis.points:
            raise ValueError("expected one row per cell")
        cells = [[_parse_float(t) for t in row[2:]] for row in rows]
        if any(len(c) != width for c in cells):
            raise ValueError("ragged rows")
        cells = np.array(cells)
    except (KeyError, ValueError, ParameterError) as e:
        raise ArtifactError("{} is malformed: {}".format(path, e)) from None
    values = cells[:, 0] + 1j * cells[:, 1] if width == 2 else cells[:, 0]
    values = values.reshape(x_axis.points, y_axis.points)
    missing = ~np.isfinite(values)
    sidecar = mask_path(path)
    if sidecar.exists():
        _, _, mask_rows = read_table(sidecar)
        valid = np.array(mask_rows, dtype=int).astype(bool)
        if valid.shape != values.shape or np.any(valid == missing):
            raise ArtifactError(
                "{} disagrees with {}".format(sidecar.name, path.name)
            )
    elif np.any(missing):
        raise ArtifactError(
            "{} has missing cells but no {}".format(path.name, sidecar.name)
        )
    else:
        valid = None
    return SpectrumMap(x_axis, y_axis, values, kind, valid)


def write_scan(scan, path):
    """Write a scan, one row per sample, extra columns sorted by name."""
    extra = sorted(scan.extra)
    header = [
        scan.parameter,
        "peak_efficiency",
        "peak_frequency",
        "valid",
    ] + extra
    rows = []
    for k in range(len(scan.values)):
        rows.append(
            [
                format_float(scan.values[k]),
                format_float(scan.peak_efficiency[k]),
                format_float(scan.peak_frequency[k]),
                str(int(scan.valid[k])),
            ]
            + [format_float(scan.extra[key][k]) for key in extra]
        )
    bandwidth = scan.bandwidth_3db
    comments = [
        "schema_version: {}".format(SCHEMA_VERSION),
        "parameter: {}".format(scan.parameter),
        "unit: {}".format(scan.unit),
        "bandwidth_3db: {}".format(
            MISSING if bandwidth is None else format_float(bandwidth)
        ),
    ]
    return write_table(path, header, rows, comments)


def read_scan(path):
    """Read a scan written by :func:`write_scan`."""
    path = Path(path)
    meta, header, rows = read_table(path)
    _check_version(meta, path)
    try:
        columns = list(zip(*rows)) if rows else [()] * len(header)
        values = [np.array([_parse_float(t) for t in c]) for c in columns]
        bandwidth = _parse_float(meta["bandwidth_3db"])
        return ScanResult(
            parameter=header[0],
            values=values[0],
            peak_efficiency=values[1],
            peak_frequency=values[2],
            valid=values[3].astype(bool),
            unit=meta["unit"],
            bandwidth_3db=None if math.isnan(bandwidth) else bandwidth,
            extra=dict(zip(header[4:], values[4:])),
        )
    except (KeyError, IndexError, ValueError, ParameterError) as e:
        raise ArtifactError("{} is malformed: {}".format(path, e)) from None


def write_report(path, entries, comments=()):
    """Write ``key = value`` lines; floats are formatted exactly."""
    path = Path(path)
    lines = ["# {}".format(c) for c in comments]
    lines.append("schema_version = {}".format(SCHEMA_VERSION))
    for key, value in entries:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, (float, np.floating)):
            text = format_float(value)
        else:
            text = str(value)
        lines.append("{} = {}".format(key, text))
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise ArtifactError("cannot write {}: {}".format(path, e)) from None
    logger.debug("wrote %s", path)
    return path


def write_fit(result, path, residual_path=None):
    """
    Write fitted parameters and, optionally, the residuals.

    Parameters are written as ``name = value unit``; the residual file
    has columns ``x`` and ``residual``.

    Returns
    -------
    list of Path
        Files written.

    """
    entries = [
        ("converged", bool(result.converged)),
        ("iterations", int(result.iterations)),
        ("residual_rms", float(result.residual_rms)),
    ]
    for name, value in result.params.items():
        entries.append(
            (name, "{} {}".format(format_float(value), result.units[name]))
        )
    written = [write_report(path, entries)]
    if residual_path is not None and result.residuals is not None:
        written.append(
            write_table(
                residual_path,
                ["x", "residual"],
                (
                    [format_float(x), format_float(r)]
                    for x, r in zip_equal(result.x, result.residuals)
                ),
                ["schema_version: {}".format(SCHEMA_VERSION)],
            )
        )
    return written


def read_trace(path, scale="linear"):
    """
    Read a measured trace from a two-column text file.

    Columns are frequency in Hz and value, separated by commas or
    white space. Lines starting with ``#`` and a leading header line
    are skipped.

    Returns
    -------
    MeasuredTrace

    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArtifactError("cannot read {}: {}".format(path, e)) from None
    samples = []
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.replace(",", " ").split()
        try:
            pair = [float(t) for t in fields[:2]]
        except ValueError:
            if samples:
                raise ArtifactError(
                    "{}:{}: not a number".format(path, n)
                ) from None
            continue
        if len(pair) < 2:
            raise ArtifactError("{}:{}: need two columns".format(path, n))
        samples.append(pair)
    freq, value = zip(*samples) if samples else ((), ())
    return MeasuredTrace(freq, value, scale)
