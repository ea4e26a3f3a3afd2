"""Quasi-static microstrip models.

Effective permittivity and characteristic impedance use the
Hammerstad-Jensen (1980) closed forms for a zero-thickness strip,
with ``u = w/h``::

    a(u)  = 1 + ln((u^4 + (u/52)^2) / (u^4 + 0.432)) / 49 + ln(1 + (u/18.1)^3) / 18.7
    b(er) = 0.564 * ((er - 0.9) / (er + 3))^0.053
    F     = (1 + 10/u)^(-a*b)
    eeff  = (er + 1)/2 + (er - 1)/2 * F
    f(u)  = 6 + (2*pi - 6) * exp(-(30.666/u)^0.7528)
    Z0    = eta0 / (2*pi*sqrt(eeff)) * ln(f(u)/u + sqrt(1 + (2/u)^2))

Losses (nepers per metre) at frequency ``f``::

    alpha_d = k0 * er * q * tan_d / (2*sqrt(eeff)),  q = (1 + F)/2 = (eeff - 1)/(er - 1)
    alpha_c = Rs / (Z0 * w),                         Rs = sqrt(pi * f * mu0 / sigma)

``q`` is the dielectric filling factor; writing it as ``(1 + F)/2`` keeps
the air-dielectric case (er = 1) free of 0/0. No dispersion and no
thickness correction are modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoConvergence, OutOfValidityRange, Unachievable, ValidationError
from .rfcore import ETA0, MU0, SPEED_OF_LIGHT, Substrate

WH_MIN = 0.05
WH_MAX = 20.0
Z_MIN = 15.0
Z_MAX = 150.0
SYNTH_TOL = 0.01
SYNTH_MAX_ITER = 100


@dataclass(frozen=True)
class MicrostripLine:
    substrate: Substrate
    width: float
    length: float

    def __post_init__(self):
        if not (math.isfinite(self.width) and self.width > 0):
            raise ValidationError(f"width must be positive, got {self.width}")
        if not (math.isfinite(self.length) and self.length >= 0):
            raise ValidationError(f"length must be >= 0, got {self.length}")
        _check_window(self.substrate, self.width)
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "length", float(self.length))

    def electricals(self, freq: float | None = None) -> LineElectricals:
        return analyze_line(self.substrate, self.width, freq)


@dataclass(frozen=True)
class LineElectricals:
    """Electrical parameters of a microstrip cross-section.

    Attenuations are evaluated at ``freq``; when no frequency was given they
    are zero and ``freq`` is None.
    """

    eff_permittivity: float
    char_impedance: float
    alpha_conductor: float = 0.0
    alpha_dielectric: float = 0.0
    freq: float | None = None

    @property
    def alpha(self) -> float:
        return self.alpha_conductor + self.alpha_dielectric


def _check_window(substrate, width):
    u = width / substrate.height
    # slack absorbs round-off in w = k*h for k on the window edge
    if not (WH_MIN * (1 - 1e-12) <= u <= WH_MAX * (1 + 1e-12)):
        raise OutOfValidityRange(u, WH_MIN, WH_MAX)
    return u


def _hj(er, u):
    a = 1.0 + math.log((u**4 + (u / 52.0) ** 2) / (u**4 + 0.432)) / 49.0 + math.log(1.0 + (u / 18.1) ** 3) / 18.7
    b = 0.564 * ((er - 0.9) / (er + 3.0)) ** 0.053
    fill = (1.0 + 10.0 / u) ** (-a * b)
    eeff = (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * fill
    fu = 6.0 + (2.0 * math.pi - 6.0) * math.exp(-((30.666 / u) ** 0.7528))
    z_air = ETA0 / (2.0 * math.pi) * math.log(fu / u + math.sqrt(1.0 + (2.0 / u) ** 2))
    return eeff, z_air / math.sqrt(eeff), (1.0 + fill) / 2.0


def attenuation(substrate: Substrate, width: float, freq: float) -> tuple[float, float]:
    """(alpha_conductor, alpha_dielectric) in Np/m."""
    u = _check_window(substrate, width)
    eeff, z0, q = _hj(substrate.rel_permittivity, u)
    return _alphas(substrate, width, freq, eeff, z0, q)


def _alphas(substrate, width, freq, eeff, z0, q):
    if math.isinf(substrate.metal_conductivity):
        alpha_c = 0.0
    else:
        rs = math.sqrt(math.pi * freq * MU0 / substrate.metal_conductivity)
        alpha_c = rs / (z0 * width)
    k0 = 2.0 * math.pi * freq / SPEED_OF_LIGHT
    alpha_d = k0 * substrate.rel_permittivity * q * substrate.loss_tangent / (2.0 * math.sqrt(eeff))
    return alpha_c, alpha_d


def analyze_line(substrate: Substrate, width: float, freq: float | None = None) -> LineElectricals:
    u = _check_window(substrate, width)
    eeff, z0, q = _hj(substrate.rel_permittivity, u)
    if freq is None:
        return LineElectricals(eeff, z0)
    if not (math.isfinite(freq) and freq > 0):
        raise ValidationError(f"frequency must be positive, got {freq}")
    alpha_c, alpha_d = _alphas(substrate, width, freq, eeff, z0, q)
    return LineElectricals(eeff, z0, alpha_c, alpha_d, float(freq))


def synthesize_width(substrate: Substrate, target_impedance: float) -> float:
    """Width giving ``target_impedance`` to within 0.01 ohm.

    Bisection in log-width over the validity window; Z0 is strictly
    decreasing in width, so the bracket always shrinks onto the root.
    """
    if not (Z_MIN <= target_impedance <= Z_MAX):
        raise Unachievable(target_impedance, f"outside supported range [{Z_MIN}, {Z_MAX}] ohm")
    er, h = substrate.rel_permittivity, substrate.height
    lo, hi = math.log(WH_MIN), math.log(WH_MAX)
    z_narrow = _hj(er, WH_MIN)[1]
    z_wide = _hj(er, WH_MAX)[1]
    if not (z_wide - SYNTH_TOL <= target_impedance <= z_narrow + SYNTH_TOL):
        raise Unachievable(
            target_impedance, f"window spans {z_wide:.3f}..{z_narrow:.3f} ohm on this substrate"
        )
    # Bisect until the bracket collapses, not merely until within tolerance:
    # the quarter-wave match downstream inherits any residual impedance error.
    best_u, best_err = None, math.inf
    for _ in range(SYNTH_MAX_ITER):
        mid = 0.5 * (lo + hi)
        u = min(max(math.exp(mid), WH_MIN), WH_MAX)
        z = _hj(er, u)[1]
        if abs(z - target_impedance) < best_err:
            best_u, best_err = u, abs(z - target_impedance)
        if z > target_impedance:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    if best_err <= SYNTH_TOL:
        return best_u * h
    raise NoConvergence(f"width synthesis for {target_impedance} ohm did not converge")


def guided_wavelength(substrate: Substrate, width: float, freq: float) -> float:
    if not (math.isfinite(freq) and freq > 0):
        raise ValidationError(f"frequency must be positive, got {freq}")
    eeff = analyze_line(substrate, width).eff_permittivity
    return SPEED_OF_LIGHT / (freq * math.sqrt(eeff))


def quarter_wave_length(substrate: Substrate, width: float, freq: float) -> float:
    return guided_wavelength(substrate, width, freq) / 4.0
