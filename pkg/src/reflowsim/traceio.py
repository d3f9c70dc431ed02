"""CSV ingestion and emission for temperature traces.

Schema: header ``t_s,x_cm,temp_c`` (full trace) or ``t_s,temp_c`` (sensor
export without positions; the position column is then reconstructed from the
belt speed).  Lines starting with ``#`` are comments and are ignored, except
that the writer records the belt speed in one so a written file can be
reloaded without out-of-band metadata.  UTF-8, comma separated.
"""

from __future__ import annotations

import numpy as np

from .thermal import ThermalTrace

_SPEED_COMMENT = "# belt_speed_cm_min ="
FULL_HEADER = "t_s,x_cm,temp_c"
SHORT_HEADER = "t_s,temp_c"

# Six fractional digits: coarse enough for stable golden files, fine enough
# that a write/load round trip stays within 1e-6 degC and 1e-6 s.
_ROW3 = "{:.6f},{:.6f},{:.6f}\n"
_ROW2 = "{:.6f},{:.6f}\n"


def write_trace_csv(trace: ThermalTrace, path) -> None:
    """Write a trace with full columns plus a belt-speed comment line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{_SPEED_COMMENT} {trace.belt_speed:.10g}\n")
        fh.write(FULL_HEADER + "\n")
        for t, x, temp in zip(trace.times, trace.positions, trace.temps):
            fh.write(_ROW3.format(t, x, temp))


def load_trace_csv(path, belt_speed: float | None = None) -> ThermalTrace:
    """Load a trace CSV, reconstructing positions from time and belt speed.

    Belt speed is resolved in order of preference: the ``belt_speed``
    argument, a ``# belt_speed_cm_min = ...`` comment in the file, or (for
    files with an x column) the ratio of the last position to the last time.
    Two-column files with none of these are an error.

    Raises
    ------
    ValueError
        Malformed header, non-numeric cells, non-monotone or non-uniform time
        (beyond 1e-6 s), time not starting at 0, or position data that
        contradicts the belt speed; messages name the offending row.
    """
    comment_speed = None
    header = None
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith(_SPEED_COMMENT):
                    comment_speed = float(line[len(_SPEED_COMMENT):].strip())
                continue
            if header is None:
                header = line
                continue
            rows.append((lineno, line.split(",")))

    if header not in (FULL_HEADER, SHORT_HEADER):
        raise ValueError(
            f"{path}: malformed header {header!r}; expected "
            f"{FULL_HEADER!r} or {SHORT_HEADER!r}"
        )
    n_cols = 3 if header == FULL_HEADER else 2
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least 2 data rows, got {len(rows)}")

    data = np.empty((len(rows), n_cols))
    for i, (lineno, cells) in enumerate(rows):
        if len(cells) != n_cols:
            raise ValueError(
                f"{path}: row {lineno}: expected {n_cols} columns, got {len(cells)}"
            )
        try:
            data[i] = [float(c) for c in cells]
        except ValueError:
            raise ValueError(f"{path}: row {lineno}: non-numeric value") from None

    times = data[:, 0]
    temps = data[:, -1]
    if abs(times[0]) > 1e-6:
        raise ValueError(
            f"{path}: row {rows[0][0]}: time must start at 0, got {times[0]}"
        )
    deltas = np.diff(times)
    bad = np.nonzero(deltas <= 0)[0]
    if bad.size:
        raise ValueError(
            f"{path}: row {rows[bad[0] + 1][0]}: time is not strictly increasing"
        )
    dt = (times[-1] - times[0]) / (len(times) - 1)
    drift = np.abs(times - np.arange(len(times)) * dt)
    bad = np.nonzero(drift > 1e-6)[0]
    if bad.size:
        raise ValueError(
            f"{path}: row {rows[bad[0]][0]}: non-uniform time spacing "
            f"(off the uniform grid by {drift[bad[0]]:.3g} s)"
        )

    speed = belt_speed if belt_speed is not None else comment_speed
    if speed is None and n_cols == 3:
        if times[-1] <= 0:
            raise ValueError(f"{path}: cannot infer belt speed from a zero-length trace")
        speed = 60.0 * data[-1, 1] / times[-1]
    if speed is None:
        raise ValueError(
            f"{path}: no x column and no belt speed given; pass belt_speed "
            f"or add a '{_SPEED_COMMENT} ...' comment"
        )
    if speed <= 0:
        raise ValueError(f"{path}: belt_speed must be positive, got {speed}")

    if n_cols == 3:
        expected_x = (speed / 60.0) * np.arange(len(times)) * dt
        bad = np.nonzero(np.abs(data[:, 1] - expected_x) > 1e-3)[0]
        if bad.size:
            raise ValueError(
                f"{path}: row {rows[bad[0]][0]}: x column inconsistent with "
                f"belt speed {speed:g} cm/min"
            )
    return ThermalTrace.from_temps(dt, speed, temps)
