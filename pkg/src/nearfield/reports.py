"""Deterministic CSV and JSON emission for run records.

CSV files carry the resolved scenario and run parameters as ``#`` comment
lines above a single header row; JSON files are the records themselves with
sorted keys. Identical inputs produce byte-identical output.
"""

import json
import sys
from pathlib import Path

from .sweeps import (
    BEAM_SWEEP_COLUMNS,
    FRAUNHOFER_COLUMNS,
    PROFILE_COLUMNS,
    SCHEMA_BEAM_SWEEP,
    SCHEMA_FRAUNHOFER,
    SCHEMA_SCHEDULE,
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _comment_block(record: dict) -> list[str]:
    lines = [f"# schema: {record['schema']}"]
    for key, value in record["scenario"].items():
        lines.append(f"# scenario.{key} = {_fmt(value)}")
    return lines


def to_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def beam_sweep_csv(record: dict) -> str:
    lines = _comment_block(record)
    for key, value in record["sweep"].items():
        if isinstance(value, list):
            value = ",".join(_fmt(v) for v in value)
        lines.append(f"# sweep.{key} = {_fmt(value)}")
    lines.append(",".join(BEAM_SWEEP_COLUMNS))
    for row in record["rows"]:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def schedule_csv(record: dict) -> str:
    """Per-selected-user power profiles in long format."""
    lines = _comment_block(record)
    users = record["users"]
    lines.append(f"# gamma_db = {_fmt(record['gamma_db'])}")
    lines.append(f"# users.count = {users['count']}")
    lines.append(f"# users.d_min_m = {_fmt(users['d_min_m'])}")
    lines.append(f"# users.d_max_m = {_fmt(users['d_max_m'])}")
    lines.append("# selected_indices = " + ",".join(str(i) for i in record["selected_indices"]))
    lines.append(",".join(PROFILE_COLUMNS))
    distance = record["profiles"]["distance_m"]
    for idx in record["selected_indices"]:
        user_z = record["users"]["positions_m"][idx][2]
        for d, p in zip(distance, record["profiles"]["power_db"][str(idx)]):
            lines.append(f"{idx},{_fmt(user_z)},{_fmt(d)},{_fmt(p)}")
    return "\n".join(lines) + "\n"


def fraunhofer_csv(record: dict) -> str:
    lines = _comment_block(record)
    lines.append(f"# diagonal_m = {_fmt(record['diagonal_m'])}")
    lines.append(f"# fraunhofer_m = {_fmt(record['fraunhofer_m'])}")
    lines.append(",".join(FRAUNHOFER_COLUMNS))
    for gap in record["gaps"]:
        lines.append(",".join(_fmt(gap[col]) for col in FRAUNHOFER_COLUMNS))
    return "\n".join(lines) + "\n"


_CSV_WRITERS = {
    SCHEMA_BEAM_SWEEP: beam_sweep_csv,
    SCHEMA_SCHEDULE: schedule_csv,
    SCHEMA_FRAUNHOFER: fraunhofer_csv,
}


def to_csv(record: dict) -> str:
    return _CSV_WRITERS[record["schema"]](record)


def write_text(text: str, path=None) -> None:
    """Write to the path, or stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, newline="\n")
