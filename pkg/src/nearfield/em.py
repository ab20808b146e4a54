"""Point-to-point propagation kernels for a LOS channel in a uniform medium.

The exact kernel is the free-space dyadic Green's function; two successive
approximations drop the rapidly-decaying dyadic terms (spherical-wave model)
and then linearize the source-position dependence (planar-wave model).
Transmit elements are small square patches lying in z = const planes, fed
with a Y-polarized constant current, so every scalar kernel here is the
yy-component of the underlying 3x3 dyad.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ConfigError, SingularDisplacementError

SPEED_OF_LIGHT = 299792458.0
"""Speed of light in vacuum [m/s]."""

FREE_SPACE_IMPEDANCE = 376.730313668
"""Wave impedance of free space, sqrt(mu0/eps0) [ohm]."""


class Model(str, Enum):
    """Propagation model selector."""

    EXACT = "exact"
    NEAR = "near"
    FAR = "far"


@dataclass(frozen=True)
class Medium:
    """Monochromatic propagation constants of the (uniform, isotropic) medium.

    Permeability and permittivity enter the field expressions only through
    the wave impedance, so only the impedance is stored.
    """

    impedance_eta: float
    wavelength_lambda: float
    frequency_f: float

    def __post_init__(self):
        for name in ("impedance_eta", "wavelength_lambda", "frequency_f"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"Medium.{name} must be positive")

    @classmethod
    def from_frequency(cls, frequency_hz: float, impedance_eta: float = FREE_SPACE_IMPEDANCE) -> "Medium":
        """Free-space medium at the given carrier; wavelength derived as c/f."""
        if not frequency_hz > 0.0:
            raise ConfigError("frequency must be positive")
        return cls(impedance_eta, SPEED_OF_LIGHT / frequency_hz, frequency_hz)

    @classmethod
    def from_wavelength(cls, wavelength_m: float, impedance_eta: float = FREE_SPACE_IMPEDANCE) -> "Medium":
        """Free-space medium with the given wavelength; frequency derived as c/lambda."""
        if not wavelength_m > 0.0:
            raise ConfigError("wavelength must be positive")
        return cls(impedance_eta, wavelength_m, SPEED_OF_LIGHT / wavelength_m)


@dataclass(frozen=True)
class PatchElement:
    """Axis-aligned square transmit patch in a z = const plane.

    The surface normal is +Z and the current polarization is Y for every
    element; neither is configurable.
    """

    center: np.ndarray
    side: float

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        if center.shape != (3,):
            raise ConfigError("PatchElement.center must be a 3-vector")
        object.__setattr__(self, "center", center)
        if not self.side > 0.0:
            raise ConfigError("PatchElement.side must be positive")


def _distances(vectors: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(vectors * vectors, axis=-1))


def _scalar_amplitude(dist, medium: Medium):
    """-j*eta*exp(-j*2*pi*dist/lambda) / (2*lambda), the common outgoing-wave factor."""
    lam = medium.wavelength_lambda
    return (-0.5j * medium.impedance_eta / lam) * np.exp(-2j * np.pi * dist / lam)


def green_exact_terms(x, medium: Medium) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three dyadic terms of the exact kernel, slowest-decaying first.

    Each term is a full 3x3 complex matrix including the shared amplitude
    factor, so their sum is ``green_exact(x, medium)``.
    """
    x = np.asarray(x, dtype=float)
    dist = _distances(x)  # shared with the scalar kernels so the identities hold bitwise
    if dist == 0.0:
        raise SingularDisplacementError("singular displacement: field point coincides with source")
    xhat = x / dist
    proj = np.outer(xhat, xhat)
    eye = np.eye(3)
    amp = _scalar_amplitude(dist, medium)
    kappa = medium.wavelength_lambda / (2.0 * np.pi * dist)
    term1 = amp * ((eye - proj) / dist)
    term2 = amp * (1j * kappa / dist) * (eye - 3.0 * proj)
    term3 = amp * (-kappa * kappa / dist) * (eye - 3.0 * proj)
    return term1, term2, term3


def green_exact(x, medium: Medium) -> np.ndarray:
    """Exact dyadic kernel G0(x) mapping a point current moment to the E-field.

    Shift invariant: ``x`` is the displacement of the field point from the
    source point. Output is a symmetric 3x3 complex matrix.
    """
    term1, term2, term3 = green_exact_terms(x, medium)
    return term1 + term2 + term3


def green_exact_yy(x, medium: Medium):
    """yy-component of the exact kernel, vectorized over displacements.

    ``x`` has shape (..., 3); the result drops the last axis.
    """
    x = np.asarray(x, dtype=float)
    dist = _distances(x)
    if np.any(dist == 0.0):
        raise SingularDisplacementError("singular displacement: field point coincides with source")
    yhat = x[..., 1] / dist
    pol1 = 1.0 - yhat * yhat
    pol3 = 1.0 - 3.0 * yhat * yhat
    kappa = medium.wavelength_lambda / (2.0 * np.pi * dist)
    amp = _scalar_amplitude(dist, medium)
    return amp * ((pol1 + pol3 * (1j * kappa - kappa * kappa)) / dist)


def kernel_near(r, s, medium: Medium):
    """Spherical-wavefront scalar kernel: the 1/r dyadic term of ``green_exact``.

    Amplitude and phase both depend on the exact source-to-field displacement.
    Broadcasts over leading axes of ``r`` and ``s``.
    """
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    d = r - s
    dist = _distances(d)
    if np.any(dist == 0.0):
        raise SingularDisplacementError("singular displacement: field point coincides with source")
    yhat = d[..., 1] / dist
    return _scalar_amplitude(dist, medium) * ((1.0 - yhat * yhat) / dist)


def kernel_far(r, s, medium: Medium):
    """Planar-wavefront scalar kernel: first-order expansion of ``kernel_near`` in ``s``.

    The source position enters only through a unit-modulus phase rotation, so
    the magnitude is independent of ``s``. Broadcasts over leading axes.
    """
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    rdist = _distances(r)
    if np.any(rdist == 0.0):
        raise SingularDisplacementError("singular displacement: field point at the array origin")
    rhat = r / rdist[..., np.newaxis]
    yhat = rhat[..., 1]
    phase = np.exp(2j * np.pi / medium.wavelength_lambda * np.sum(rhat * s, axis=-1))
    return _scalar_amplitude(rdist, medium) * ((1.0 - yhat * yhat) / rdist) * phase


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def patch_rule(elem: PatchElement, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss-Legendre rule over the patch surface.

    Returns quadrature points of shape (order**2, 3) and matching weights
    that already include the surface Jacobian.
    """
    if order < 1:
        raise ConfigError(f"quadrature order must be >= 1, got {order}")
    nodes, weights = _gauss_legendre(order)
    half = 0.5 * elem.side
    ox, oy = np.meshgrid(half * nodes, half * nodes, indexing="ij")
    points = elem.center + np.column_stack(
        [ox.ravel(), oy.ravel(), np.zeros(order * order)]
    )
    w2d = (half * half) * np.outer(weights, weights).ravel()
    return points, w2d


def _on_patch(r: np.ndarray, elem: PatchElement) -> bool:
    if r[2] != elem.center[2]:
        return False
    half = 0.5 * elem.side
    return abs(r[0] - elem.center[0]) <= half and abs(r[1] - elem.center[1]) <= half


def element_field(r, elem: PatchElement, medium: Medium, model: Model, quadrature_order: int = 8):
    """Field contribution of one patch at ``r``: the kernel integrated over the patch.

    Exact model: tensor Gauss-Legendre quadrature of the exact yy-kernel.
    Near/far models: the kernel is taken as constant over the small patch,
    giving the closed form ``side**2 * kernel(r, center)``.
    """
    r = np.asarray(r, dtype=float)
    if _on_patch(r, elem):
        raise SingularDisplacementError("singular displacement: evaluation point lies on the patch surface")
    model = Model(model)
    area = elem.side * elem.side
    if model is Model.NEAR:
        return area * kernel_near(r, elem.center, medium)
    if model is Model.FAR:
        return area * kernel_far(r, elem.center, medium)
    points, weights = patch_rule(elem, quadrature_order)
    return np.dot(weights, green_exact_yy(r - points, medium))
