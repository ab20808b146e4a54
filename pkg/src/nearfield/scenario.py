"""Simulation scenario: carrier, array geometry, model choice, and config parsing.

A scenario is the single source of physical truth for a run. The wavelength
is always derived from the carrier frequency via the SI speed of light;
geometry inputs are expressed as fractions of that wavelength.
"""

from dataclasses import dataclass, fields
from functools import lru_cache
from pathlib import Path

from .arrays import TxArray, build_array, reference_power
from .em import SPEED_OF_LIGHT, Medium, Model
from .errors import ConfigError


@dataclass(frozen=True)
class Scenario:
    frequency_hz: float = 30e9
    nx: int = 20
    ny: int = 200
    element_side_over_lambda: float = 0.5
    spacing_over_lambda: float = 0.5
    model: Model = Model.NEAR
    quadrature_order: int = 8

    def __post_init__(self):
        if not self.frequency_hz > 0.0:
            raise ConfigError("frequency_hz must be positive")
        if self.nx < 1 or self.ny < 1:
            raise ConfigError("nx and ny must be at least 1")
        if not 0.0 < self.spacing_over_lambda <= 1.0:
            raise ConfigError("spacing_over_lambda must lie in (0, 1]")
        if not 0.0 < self.element_side_over_lambda <= 0.5:
            # patches are modeled as electrically small; half a wavelength is the cap
            raise ConfigError("element_side_over_lambda must lie in (0, 0.5]")
        if self.element_side_over_lambda > self.spacing_over_lambda:
            raise ConfigError("element_side_over_lambda exceeds spacing_over_lambda (overlapping elements)")
        object.__setattr__(self, "model", Model(self.model))
        if self.quadrature_order < 1:
            raise ConfigError("quadrature_order must be at least 1")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.frequency_hz

    def medium(self) -> Medium:
        return Medium.from_frequency(self.frequency_hz)

    def array(self) -> TxArray:
        return _array_for(self)

    def reference_power(self) -> float:
        """Near-model matched-filter power at the 0.1 m broadside anchor (cached)."""
        return _reference_for(self)

    def as_dict(self) -> dict:
        """All fields, defaults materialized, plus the derived wavelength."""
        return {
            "frequency_hz": self.frequency_hz,
            "nx": self.nx,
            "ny": self.ny,
            "element_side_over_lambda": self.element_side_over_lambda,
            "spacing_over_lambda": self.spacing_over_lambda,
            "model": self.model.value,
            "quadrature_order": self.quadrature_order,
            "wavelength_m": self.wavelength_m,
        }


_FIELD_NAMES = tuple(f.name for f in fields(Scenario))

_COERCERS = {
    "frequency_hz": float,
    "nx": int,
    "ny": int,
    "element_side_over_lambda": float,
    "spacing_over_lambda": float,
    "model": Model,
    "quadrature_order": int,
}


@lru_cache(maxsize=8)
def _array_for(scenario: Scenario) -> TxArray:
    lam = scenario.wavelength_m
    return build_array(
        scenario.nx,
        scenario.ny,
        scenario.element_side_over_lambda * lam,
        scenario.spacing_over_lambda * lam,
    )


@lru_cache(maxsize=8)
def _reference_for(scenario: Scenario) -> float:
    return reference_power(scenario.array(), scenario.medium())


def parse_config(path) -> dict[str, str]:
    """Read a flat ``key = value`` config file; '#' starts a comment.

    Keys must be scenario field names; errors carry the file and line number.
    """
    raw: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _FIELD_NAMES:
            raise ConfigError(f"{path}:{lineno}: unknown scenario field {key!r}")
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        raw[key] = value
    return raw


def scenario_from_mappings(*mappings) -> Scenario:
    """Build a scenario from key/value mappings; later mappings override earlier.

    Values may be strings (config file, CLI) or already-typed; None means unset.
    """
    merged: dict[str, object] = {}
    for mapping in mappings:
        merged.update({k: v for k, v in mapping.items() if v is not None})
    coerced: dict[str, object] = {}
    for key, value in merged.items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown scenario field {key!r}")
        try:
            coerced[key] = _COERCERS[key](value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid value for {key!r}: {value!r}") from exc
    return Scenario(**coerced)
