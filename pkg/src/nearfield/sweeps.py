"""Experiment engine: beam-power sweeps, user scheduling, and the near/far boundary report.

Every run returns a plain JSON-compatible dict with a ``schema`` tag and the
fully resolved scenario embedded, so emitted files are self-describing.
"""

from dataclasses import dataclass

import numpy as np

from .arrays import DB_FLOOR, channel_matrix, channel_vector, mf_beamformer, array_diagonal, fraunhofer_distance
from .em import Model
from .errors import ConfigError
from .multiaccess import heuristic_select, z_axis_users
from .scenario import Scenario

SCHEMA_BEAM_SWEEP = "nearfield.beam-sweep/1"
SCHEMA_SCHEDULE = "nearfield.schedule/1"
SCHEMA_FRAUNHOFER = "nearfield.fraunhofer/1"

BEAM_SWEEP_COLUMNS = ("sweep_value", "x_m", "y_m", "z_m", "power_near_db", "power_far_db", "gap_db")
PROFILE_COLUMNS = ("user_index", "user_distance_m", "eval_distance_m", "power_db")
FRAUNHOFER_COLUMNS = ("fraction", "distance_m", "max_gap_db", "main_lobe_gap_db")

SIR_DB_CAP = 200.0

Z_AXIS = "z-distance"
ANGLE_AXIS = "angle-at-radius"

_BOUNDARY_ARC = {"start": -2.0, "stop": 2.0, "count": 181}


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional receiver sweep.

    ``z-distance`` walks the Z-axis: r' = (0, 0, value) with value in meters.
    ``angle-at-radius`` walks an arc in the YZ-plane at radius |focus|:
    r' = R (0, sin a, cos a) with the value in degrees off broadside.
    """

    axis: str
    start: float
    stop: float
    count: int
    focus: tuple[float, float, float]

    def __post_init__(self):
        if self.axis not in (Z_AXIS, ANGLE_AXIS):
            raise ConfigError(f"sweep axis must be '{Z_AXIS}' or '{ANGLE_AXIS}', got {self.axis!r}")
        if self.count < 1:
            raise ConfigError("sweep count must be at least 1")
        if self.count == 1:
            if self.start > self.stop:
                raise ConfigError("sweep start must not exceed stop")
        elif not self.start < self.stop:
            raise ConfigError("sweep start must be below stop")
        focus = tuple(float(v) for v in self.focus)
        if len(focus) != 3:
            raise ConfigError("sweep focus must be a 3-vector")
        object.__setattr__(self, "focus", focus)

    def as_dict(self) -> dict:
        return {
            "axis": self.axis,
            "start": self.start,
            "stop": self.stop,
            "count": self.count,
            "focus_m": list(self.focus),
        }


def sweep_points(spec: SweepSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sweep values and the matching (P, 3) receiver positions."""
    values = np.linspace(spec.start, spec.stop, spec.count)
    if spec.axis == Z_AXIS:
        points = np.column_stack([np.zeros(spec.count), np.zeros(spec.count), values])
        return values, points
    radius = float(np.linalg.norm(spec.focus))
    if radius == 0.0:
        raise ConfigError("angle sweep needs a nonzero focus to set the arc radius")
    ang = np.deg2rad(values)
    points = radius * np.column_stack([np.zeros(spec.count), np.sin(ang), np.cos(ang)])
    return values, points


def power_db_array(p: np.ndarray, reference: float, floor_db: float = DB_FLOOR) -> np.ndarray:
    """Vectorized normalized power in dB, clamped at the floor."""
    if reference <= 0.0:
        raise ConfigError("reference power must be positive")
    p = np.asarray(p, dtype=float)
    out = np.full(p.shape, floor_db)
    ok = p > 0.0
    out[ok] = np.maximum(10.0 * np.log10(p[ok] / reference), floor_db)
    return out


def _mf_power_map(scenario: Scenario, points: np.ndarray, focus, model: Model) -> np.ndarray:
    """Matched-filter received power at each point for one model, linear scale."""
    array = scenario.array()
    medium = scenario.medium()
    bf = mf_beamformer(channel_vector(array, focus, medium, model, scenario.quadrature_order))
    g = channel_matrix(array, points, medium, model, scenario.quadrature_order)
    field = g @ bf.weights
    area = array.element_side * array.element_side
    return area * (field.real**2 + field.imag**2)


def beam_sweep(scenario: Scenario, spec: SweepSpec) -> dict:
    """Near- and far-field normalized power along a sweep, one row per point.

    Both model columns share the near-model 0.1 m broadside normalization, so
    the gap column is the models' disagreement in dB at each point.
    """
    values, points = sweep_points(spec)
    ref = scenario.reference_power()
    near_db = power_db_array(_mf_power_map(scenario, points, spec.focus, Model.NEAR), ref)
    far_db = power_db_array(_mf_power_map(scenario, points, spec.focus, Model.FAR), ref)
    gap = np.abs(near_db - far_db)
    table = np.column_stack([values, points, near_db, far_db, gap])
    rows = [[float(v) for v in row] for row in table]
    return {
        "schema": SCHEMA_BEAM_SWEEP,
        "scenario": scenario.as_dict(),
        "sweep": spec.as_dict(),
        "columns": list(BEAM_SWEEP_COLUMNS),
        "rows": rows,
    }


def schedule_run(
    scenario: Scenario,
    count: int,
    d_min: float,
    d_max: float,
    gamma_db: float,
    profile_points: int = 400,
) -> dict:
    """Select users on the Z-axis under the SIR threshold and profile each pick.

    Power profiles use one matched filter per selected user, swept over the
    candidate range, normalized to 0 dB at the selected position closest to
    the transmitter.
    """
    users = z_axis_users(count, d_min, d_max)
    array = scenario.array()
    medium = scenario.medium()
    result = heuristic_select(
        users, gamma_db, array, medium, scenario.model, scenario.quadrature_order
    )
    with np.errstate(divide="ignore"):
        sir_db = np.minimum(10.0 * np.log10(result.sir_matrix), SIR_DB_CAP)

    grid = np.linspace(d_min, d_max, profile_points)
    grid_points = np.column_stack([np.zeros(profile_points), np.zeros(profile_points), grid])
    anchor_position = users.positions[result.selected[0]]
    area = array.element_side * array.element_side
    g_anchor = channel_vector(array, anchor_position, medium, scenario.model, scenario.quadrature_order)
    anchor_power = area * float(np.linalg.norm(g_anchor.entries)) ** 2
    profiles = {}
    for idx in result.selected:
        p = _mf_power_map(scenario, grid_points, users.positions[idx], scenario.model)
        profiles[str(idx)] = power_db_array(p, anchor_power).tolist()

    return {
        "schema": SCHEMA_SCHEDULE,
        "scenario": scenario.as_dict(),
        "gamma_db": float(gamma_db),
        "users": {
            "count": count,
            "d_min_m": float(d_min),
            "d_max_m": float(d_max),
            "positions_m": users.positions.tolist(),
        },
        "selected_indices": list(result.selected),
        "selected_positions_m": users.positions[result.selected].tolist(),
        "sir_db": sir_db.tolist(),
        "profiles": {"distance_m": grid.tolist(), "power_db": profiles},
    }


def central_lobe_mask(values_db: np.ndarray, width_db: float = 3.0) -> np.ndarray:
    """Contiguous region around the peak within ``width_db`` of it."""
    values_db = np.asarray(values_db, dtype=float)
    peak = int(np.argmax(values_db))
    cut = values_db[peak] - width_db
    mask = np.zeros(len(values_db), dtype=bool)
    lo = peak
    while lo >= 0 and values_db[lo] >= cut:
        mask[lo] = True
        lo -= 1
    hi = peak + 1
    while hi < len(values_db) and values_db[hi] >= cut:
        mask[hi] = True
        hi += 1
    return mask


def fraunhofer_report(scenario: Scenario, fractions: tuple[float, ...] = (0.01, 0.1, 1.0)) -> dict:
    """Near/far model disagreement at set fractions of the Fraunhofer distance.

    For each fraction, the models are compared on a broadside arc focused at
    that distance; the gap is reported over the whole arc and over the main
    lobe (within 3 dB of the near-model peak).
    """
    array = scenario.array()
    medium = scenario.medium()
    diag = array_diagonal(array)
    boundary = fraunhofer_distance(array, medium)
    gaps = []
    for fraction in fractions:
        distance = fraction * boundary
        spec = SweepSpec(ANGLE_AXIS, focus=(0.0, 0.0, distance), **_BOUNDARY_ARC)
        record = beam_sweep(scenario, spec)
        rows = np.asarray(record["rows"], dtype=float)
        near_db = rows[:, 4]
        gap = rows[:, 6]
        lobe = central_lobe_mask(near_db)
        gaps.append(
            {
                "fraction": float(fraction),
                "distance_m": float(distance),
                "max_gap_db": float(np.max(gap)),
                "main_lobe_gap_db": float(np.max(gap[lobe])),
            }
        )
    return {
        "schema": SCHEMA_FRAUNHOFER,
        "scenario": scenario.as_dict(),
        "diagonal_m": float(diag),
        "fraunhofer_m": float(boundary),
        "arc": dict(_BOUNDARY_ARC),
        "gaps": gaps,
    }
