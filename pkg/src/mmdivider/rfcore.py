"""Core value types: substrate stack-up and frequency grid."""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidCount, InvalidRange, InvalidSubstrate

SPEED_OF_LIGHT = 299_792_458.0
MU0 = 4e-7 * math.pi  # pre-2019 exact value; differs from CODATA by < 1e-9 relative
ETA0 = MU0 * SPEED_OF_LIGHT

COPPER_CONDUCTIVITY = 5.8e7
DEFAULT_LOSS_TANGENT = 0.0013
# Perfect conductor sentinel.
LOSSLESS_CONDUCTIVITY = math.inf


def _substrate_violations(rel_permittivity, height, loss_tangent, metal_thickness, metal_conductivity):
    bad = []

    def finite(name, value, allow_inf=False):
        try:
            v = float(value)
        except (TypeError, ValueError):
            bad.append((name, f"not a number: {value!r}"))
            return None
        if math.isnan(v) or (math.isinf(v) and not allow_inf):
            bad.append((name, f"must be finite, got {v}"))
            return None
        return v

    er = finite("rel_permittivity", rel_permittivity)
    h = finite("height", height)
    tand = finite("loss_tangent", loss_tangent)
    t = finite("metal_thickness", metal_thickness)
    sigma = finite("metal_conductivity", metal_conductivity, allow_inf=True)

    if er is not None and er < 1.0:
        bad.append(("rel_permittivity", f"must be >= 1, got {er}"))
    if h is not None and h <= 0:
        bad.append(("height", f"must be > 0, got {h}"))
    if t is not None:
        if t <= 0:
            bad.append(("metal_thickness", f"must be > 0, got {t}"))
        elif h is not None and h > 0 and t >= h:
            bad.append(("metal_thickness", f"must be < height ({h}), got {t}"))
    if tand is not None and tand < 0:
        bad.append(("loss_tangent", f"must be >= 0, got {tand}"))
    if sigma is not None and sigma <= 0:
        bad.append(("metal_conductivity", f"must be > 0, got {sigma}"))
    return bad


@dataclass(frozen=True)
class Substrate:
    """Single-layer microstrip stack-up. All lengths in metres.

    ``metal_conductivity = math.inf`` denotes a perfect conductor.
    ``material`` is a free-form label used only in reports.
    """

    rel_permittivity: float
    height: float
    loss_tangent: float = DEFAULT_LOSS_TANGENT
    metal_thickness: float = 17e-6
    metal_conductivity: float = COPPER_CONDUCTIVITY
    material: str = ""

    def __post_init__(self):
        bad = _substrate_violations(
            self.rel_permittivity,
            self.height,
            self.loss_tangent,
            self.metal_thickness,
            self.metal_conductivity,
        )
        if bad:
            raise InvalidSubstrate(bad)
        for name in ("rel_permittivity", "height", "loss_tangent", "metal_thickness", "metal_conductivity"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def is_lossless(self) -> bool:
        return self.loss_tangent == 0.0 and math.isinf(self.metal_conductivity)

    def lossless(self) -> Substrate:
        """Copy with zero dielectric loss and perfect conductors."""
        return dataclasses.replace(self, loss_tangent=0.0, metal_conductivity=LOSSLESS_CONDUCTIVITY)

    def to_dict(self) -> dict:
        return {
            "rel_permittivity": self.rel_permittivity,
            "height": self.height,
            "loss_tangent": self.loss_tangent,
            "metal_thickness": self.metal_thickness,
            # JSON has no infinity; null stands for a perfect conductor
            "metal_conductivity": None if math.isinf(self.metal_conductivity) else self.metal_conductivity,
            "material": self.material,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Substrate:
        return validate_substrate(data)


def rogers3003(**overrides) -> Substrate:
    """The 1.6 mm Roger 3003 board with 17 um copper used by the reference divider."""
    params = dict(
        rel_permittivity=3.0,
        height=1.6e-3,
        loss_tangent=DEFAULT_LOSS_TANGENT,
        metal_thickness=17e-6,
        metal_conductivity=COPPER_CONDUCTIVITY,
        material="Roger 3003",
    )
    params.update(overrides)
    return Substrate(**params)


def validate_substrate(raw) -> Substrate:
    """Build a :class:`Substrate` from a mapping or attribute-bearing object.

    Every violated invariant is collected into a single :class:`InvalidSubstrate`.
    """
    if isinstance(raw, Substrate):
        return raw
    names = ("rel_permittivity", "height", "loss_tangent", "metal_thickness", "metal_conductivity")
    get = raw.get if isinstance(raw, Mapping) else (lambda k, d=None: getattr(raw, k, d))
    values = {}
    missing = []
    for name in names:
        v = get(name, None)
        if v is None:
            if name == "metal_conductivity" and isinstance(raw, Mapping) and name in raw:
                v = LOSSLESS_CONDUCTIVITY
            else:
                missing.append((name, "missing"))
        values[name] = v
    if missing:
        raise InvalidSubstrate(missing)
    bad = _substrate_violations(**values)
    if bad:
        raise InvalidSubstrate(bad)
    return Substrate(**values, material=str(get("material", "") or ""))


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform, endpoint-inclusive frequency grid in hertz."""

    start: float
    stop: float
    points: int
    values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        start, stop, points = float(self.start), float(self.stop), self.points
        if not (math.isfinite(start) and math.isfinite(stop)) or start <= 0 or stop <= start:
            raise InvalidRange(f"need 0 < start < stop, got start={start}, stop={stop}")
        if isinstance(points, bool) or int(points) != points or points < 2:
            raise InvalidCount(f"need at least 2 points, got {points!r}")
        points = int(points)
        k = np.arange(points, dtype=float)
        values = start + k * (stop - start) / (points - 1)
        values[-1] = stop
        values.flags.writeable = False
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "stop", stop)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.points - 1)

    def __len__(self):
        return self.points

    def __iter__(self):
        return iter(self.values.tolist())


def make_frequency_grid(start: float, stop: float, points: int) -> FrequencyGrid:
    return FrequencyGrid(start, stop, points)


def single_frequency(freq: float) -> np.ndarray:
    """One-point 'band' for objectives and spot checks."""
    if not (math.isfinite(freq) and freq > 0):
        raise InvalidRange(f"frequency must be positive, got {freq}")
    return np.array([float(freq)])
