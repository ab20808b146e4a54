"""Uniform planar transmit array, channel vectors, and matched-filter beamforming."""

from dataclasses import dataclass

import numpy as np

from .em import Medium, Model, PatchElement, green_exact_yy, kernel_near, patch_rule
from .errors import ConfigError, NullChannelError, SingularDisplacementError

DB_FLOOR = -200.0
"""Lower clamp for reported decibel values, keeps emitted tables finite."""

REFERENCE_POSITION = np.array([0.0, 0.0, 0.1])
"""Broadside anchor at 0.1 m: the 0 dB point for normalized received power."""

_CHUNK_ENTRIES = 20_000_000  # bound on points*elements per vectorized block


@dataclass(frozen=True)
class TxArray:
    """Regular grid of identical patches in the z = 0 plane, centered at the origin.

    Element order is row-major with the X index fastest:
    ``n = iy * nx + ix``, ``center = ((ix - (nx-1)/2) * spacing, (iy - (ny-1)/2) * spacing, 0)``.
    """

    nx: int
    ny: int
    element_side: float
    spacing: float
    centers: np.ndarray

    @property
    def n(self) -> int:
        return self.nx * self.ny

    def elements(self) -> list[PatchElement]:
        return [PatchElement(c, self.element_side) for c in self.centers]

    def aperture_extents(self) -> tuple[float, float]:
        """Center-grid spans along X and Y: (nx-1)*spacing, (ny-1)*spacing."""
        return (self.nx - 1) * self.spacing, (self.ny - 1) * self.spacing


def build_array(nx: int, ny: int, element_side: float, spacing: float) -> TxArray:
    """Build the uniform planar array; the centroid of all centers is the origin."""
    if nx < 1 or ny < 1:
        raise ConfigError(f"array needs nx >= 1 and ny >= 1, got {nx} x {ny}")
    if element_side <= 0.0 or spacing <= 0.0:
        raise ConfigError("element_side and spacing must be positive")
    if element_side > spacing:
        raise ConfigError(
            f"overlapping elements: element_side {element_side} exceeds spacing {spacing}"
        )
    ix = (np.arange(nx) - (nx - 1) / 2.0) * spacing
    iy = (np.arange(ny) - (ny - 1) / 2.0) * spacing
    gy, gx = np.meshgrid(iy, ix, indexing="ij")  # x varies fastest in the flat order
    centers = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(nx * ny)])
    return TxArray(nx, ny, element_side, spacing, centers)


@dataclass(frozen=True)
class ChannelVector:
    """Per-element complex field responses g_n(r) at one receive position."""

    entries: np.ndarray
    model: Model
    rx_position: np.ndarray


@dataclass(frozen=True)
class Beamformer:
    """Unit-power complex excitation across the array, focused at one position."""

    weights: np.ndarray
    focus: np.ndarray


def _near_block(points: np.ndarray, centers: np.ndarray, area: float, medium: Medium) -> np.ndarray:
    disp = points[:, np.newaxis, :] - centers[np.newaxis, :, :]
    return area * kernel_near(disp, np.zeros(3), medium)


def _far_block(points: np.ndarray, centers: np.ndarray, area: float, medium: Medium) -> np.ndarray:
    rdist = np.sqrt(np.sum(points * points, axis=-1))
    if np.any(rdist == 0.0):
        raise SingularDisplacementError("singular displacement: evaluation point at the array origin")
    rhat = points / rdist[:, np.newaxis]
    pol = 1.0 - rhat[:, 1] * rhat[:, 1]
    lam = medium.wavelength_lambda
    amp = (-0.5j * medium.impedance_eta / lam) * np.exp(-2j * np.pi * rdist / lam)
    base = area * (amp * (pol / rdist))
    phase = np.exp(2j * np.pi / lam * (rhat @ centers.T))
    return base[:, np.newaxis] * phase


def _exact_block(
    points: np.ndarray, array: TxArray, medium: Medium, quadrature_order: int
) -> np.ndarray:
    qpoints, qweights = patch_rule(PatchElement(np.zeros(3), array.element_side), quadrature_order)
    # displacement (P, N, Q, 3) is chunked over P by the caller
    disp = (
        points[:, np.newaxis, np.newaxis, :]
        - array.centers[np.newaxis, :, np.newaxis, :]
        - qpoints[np.newaxis, np.newaxis, :, :]
    )
    return green_exact_yy(disp, medium) @ qweights


def _check_clear_of_patches(points: np.ndarray, array: TxArray) -> None:
    in_plane = points[:, 2] == 0.0
    if not np.any(in_plane):
        return
    half = 0.5 * array.element_side
    flat = points[in_plane, :2]
    offsets = np.abs(flat[:, np.newaxis, :] - array.centers[np.newaxis, :, :2])
    if np.any(np.all(offsets <= half, axis=-1)):
        raise SingularDisplacementError(
            "singular displacement: evaluation point lies on a patch surface"
        )


def channel_matrix(
    array: TxArray,
    points,
    medium: Medium,
    model: Model,
    quadrature_order: int = 8,
) -> np.ndarray:
    """Stack of channel vectors for many receive positions, shape (P, N).

    Vectorized equivalent of calling ``channel_vector`` per point; large
    sweeps are evaluated in memory-bounded blocks.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    model = Model(model)
    _check_clear_of_patches(points, array)
    area = array.element_side * array.element_side
    per_point = array.n * (quadrature_order**2 if model is Model.EXACT else 1)
    step = max(1, _CHUNK_ENTRIES // max(per_point, 1))
    blocks = []
    for lo in range(0, len(points), step):
        chunk = points[lo : lo + step]
        if model is Model.NEAR:
            blocks.append(_near_block(chunk, array.centers, area, medium))
        elif model is Model.FAR:
            blocks.append(_far_block(chunk, array.centers, area, medium))
        else:
            blocks.append(_exact_block(chunk, array, medium, quadrature_order))
    return np.concatenate(blocks, axis=0)


def channel_vector(
    array: TxArray,
    r,
    medium: Medium,
    model: Model,
    quadrature_order: int = 8,
) -> ChannelVector:
    """Channel vector g(r): one kernel integral per element, in array element order."""
    r = np.asarray(r, dtype=float)
    try:
        entries = channel_matrix(array, r[np.newaxis, :], medium, model, quadrature_order)[0]
    except SingularDisplacementError as exc:
        dists = np.sqrt(np.sum((r - array.centers) ** 2, axis=-1))
        bad = np.flatnonzero(dists == 0.0)
        if bad.size:
            raise SingularDisplacementError(f"{exc} (element index {bad[0]})") from None
        raise
    return ChannelVector(entries, Model(model), r)


def mf_beamformer(g: ChannelVector) -> Beamformer:
    """Matched-filter excitation: conjugated channel scaled to unit transmit power."""
    norm = np.linalg.norm(g.entries)
    if norm == 0.0:
        raise NullChannelError("null channel, beamformer undefined")
    return Beamformer(np.conj(g.entries) / norm, g.rx_position)


def received_power(bf: Beamformer, g_eval: ChannelVector, element_side: float) -> float:
    """Received power side**2 * |sum_n w_n g_n|** 2 at the evaluation channel."""
    if bf.weights.shape != g_eval.entries.shape:
        raise ConfigError(
            f"length mismatch: beamformer has {bf.weights.shape[0]} weights, "
            f"channel has {g_eval.entries.shape[0]} entries"
        )
    field = np.dot(bf.weights, g_eval.entries)
    return element_side * element_side * (field.real**2 + field.imag**2)


def beam_power(
    r_focus,
    r_eval,
    array: TxArray,
    medium: Medium,
    model: Model,
    quadrature_order: int = 8,
) -> float:
    """Power delivered to ``r_eval`` by the matched filter designed for ``r_focus``."""
    bf = mf_beamformer(channel_vector(array, r_focus, medium, model, quadrature_order))
    g_eval = channel_vector(array, r_eval, medium, model, quadrature_order)
    return received_power(bf, g_eval, array.element_side)


def reference_power(array: TxArray, medium: Medium) -> float:
    """0 dB anchor: matched-filter power at the broadside 0.1 m point, near model."""
    return beam_power(REFERENCE_POSITION, REFERENCE_POSITION, array, medium, Model.NEAR)


def normalized_power_db(p: float, reference: float, floor_db: float = DB_FLOOR) -> float:
    """10*log10(p / reference), clamped at the floor; nonpositive powers hit the floor."""
    if reference <= 0.0:
        raise ConfigError("reference power must be positive")
    if p <= 0.0:
        return floor_db
    return max(10.0 * np.log10(p / reference), floor_db)


def array_diagonal(array: TxArray) -> float:
    """Aperture diameter convention: spacing * sqrt(nx**2 + ny**2).

    For a single element this is the unit-cell diagonal.
    """
    return array.spacing * float(np.hypot(array.nx, array.ny))


def fraunhofer_distance(array: TxArray, medium: Medium) -> float:
    """Conventional near/far boundary 2*D**2/lambda with D = ``array_diagonal``."""
    d = array_diagonal(array)
    return 2.0 * d * d / medium.wavelength_lambda
