"""Two-port chain matrices, S-parameter conversion and divider assembly."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import FrequencyMismatch, NumericalError, SingularConversion, ValidationError
from .kernels import get_kernel
from .microstrip import MicrostripLine, analyze_line, attenuation
from .rfcore import SPEED_OF_LIGHT, FrequencyGrid


def _finite(z):
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class TwoPortABCD:
    a: complex
    b: complex
    c: complex
    d: complex
    freq: float

    def __post_init__(self):
        for name in "abcd":
            v = complex(getattr(self, name))
            if not _finite(v):
                raise NumericalError(f"non-finite ABCD entry {name}={v}")
            object.__setattr__(self, name, v)

    @classmethod
    def identity(cls, freq):
        return cls(1.0, 0.0, 0.0, 1.0, freq)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def input_impedance(self, z_load: complex) -> complex:
        return (self.a * z_load + self.b) / (self.c * z_load + self.d)


def propagation_constant(line: MicrostripLine, freq: float) -> complex:
    el = analyze_line(line.substrate, line.width, freq)
    beta = 2.0 * math.pi * freq * math.sqrt(el.eff_permittivity) / SPEED_OF_LIGHT
    return complex(el.alpha, beta)


def line_abcd(line: MicrostripLine, freq: float) -> TwoPortABCD:
    """Chain matrix of a uniform (possibly lossy) microstrip segment."""
    zc = analyze_line(line.substrate, line.width).char_impedance
    gl = propagation_constant(line, freq) * line.length
    ch, sh = cmath.cosh(gl), cmath.sinh(gl)
    return TwoPortABCD(ch, zc * sh, sh / zc, ch, freq)


def ideal_line_abcd(z: float, theta: float, freq: float) -> TwoPortABCD:
    """Lossless TEM line of impedance ``z`` and electrical length ``theta`` (rad)."""
    return TwoPortABCD(math.cos(theta), 1j * z * math.sin(theta), 1j * math.sin(theta) / z, math.cos(theta), freq)


def cascade(first: TwoPortABCD, second: TwoPortABCD) -> TwoPortABCD:
    if first.freq != second.freq:
        raise FrequencyMismatch(f"cannot cascade networks at {first.freq} Hz and {second.freq} Hz")
    return TwoPortABCD(
        first.a * second.a + first.b * second.c,
        first.a * second.b + first.b * second.d,
        first.c * second.a + first.d * second.c,
        first.c * second.b + first.d * second.d,
        first.freq,
    )


def abcd_to_s(m: TwoPortABCD, zref: float) -> np.ndarray:
    if not zref > 0:
        raise ValidationError(f"reference impedance must be positive, got {zref}")
    a, b, c, d = m.a, m.b, m.c, m.d
    delta = a + b / zref + c * zref + d
    if delta == 0:
        raise SingularConversion("ABCD to S conversion is singular (a + b/z + c*z + d = 0)")
    return np.array(
        [
            [(a + b / zref - c * zref - d) / delta, 2.0 * (a * d - b * c) / delta],
            [2.0 / delta, (-a + b / zref - c * zref + d) / delta],
        ]
    )


@dataclass(frozen=True)
class SParamBlock:
    """Scattering matrices over frequency: ``s[i]`` is the n-port matrix at ``freqs[i]``.

    Port order for dividers is 1 = input, 2 and 3 = outputs.
    """

    freqs: np.ndarray
    s: np.ndarray
    ref_impedance: float = 50.0
    grid: FrequencyGrid | None = field(default=None, compare=False)

    def __post_init__(self):
        freqs = np.array(self.freqs, dtype=float).reshape(-1)
        s = np.array(self.s, dtype=complex)
        if s.ndim != 3 or s.shape[0] != freqs.size or s.shape[1] != s.shape[2]:
            raise ValidationError(f"S array shape {s.shape} does not match {freqs.size} frequencies")
        if freqs.size and (np.any(freqs <= 0) or np.any(np.diff(freqs) <= 0)):
            raise ValidationError("frequencies must be positive and strictly increasing")
        if not np.all(np.isfinite(s)):
            raise NumericalError("S-parameters contain non-finite values")
        if not self.ref_impedance > 0:
            raise ValidationError(f"reference impedance must be positive, got {self.ref_impedance}")
        freqs.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "ref_impedance", float(self.ref_impedance))

    @property
    def ports(self) -> int:
        return self.s.shape[1]

    def __len__(self):
        return self.freqs.size

    def param(self, i: int, j: int) -> np.ndarray:
        """S_ij over frequency, 1-based port numbers."""
        return self.s[:, i - 1, j - 1]

    def nearest_index(self, freq: float) -> int:
        return int(np.argmin(np.abs(self.freqs - freq)))

    def scaled(self, k: float) -> SParamBlock:
        return SParamBlock(self.freqs, self.s * k, self.ref_impedance, self.grid)

    def __eq__(self, other):
        if not isinstance(other, SParamBlock):
            return NotImplemented
        return (
            self.ref_impedance == other.ref_impedance
            and np.array_equal(self.freqs, other.freqs)
            and np.array_equal(self.s, other.s)
        )

    __hash__ = None


def _freqs_of(grid):
    if isinstance(grid, FrequencyGrid):
        return np.asarray(grid.values, dtype=float)
    freqs = np.atleast_1d(np.asarray(grid, dtype=float))
    if freqs.ndim != 1 or freqs.size == 0 or np.any(~np.isfinite(freqs)) or np.any(freqs <= 0):
        raise ValidationError("frequencies must be a non-empty 1-D array of positive values")
    return freqs


def divider_arms(design):
    """The three arms as segment lists, port side first."""
    return (
        [design.input_line],
        [design.output_line_a, design.transformer_a],
        [design.output_line_b, design.transformer_b],
    )


def _segment_tables(design, freqs):
    zc, cols, ptr = [], [], [0]
    for arm in divider_arms(design):
        for line in arm:
            el = analyze_line(line.substrate, line.width)
            # alpha_c scales as sqrt(f), alpha_d as f
            ac1, ad1 = attenuation(line.substrate, line.width, 1.0)
            alpha = ac1 * np.sqrt(freqs) + ad1 * freqs
            beta = 2.0 * np.pi * freqs * math.sqrt(el.eff_permittivity) / SPEED_OF_LIGHT
            zc.append(el.char_impedance)
            cols.append((alpha + 1j * beta) * line.length)
        ptr.append(len(zc))
    return np.array(zc), np.stack(cols, axis=1), np.array(ptr, dtype=np.intp)


def assemble_divider_s(design, grid, *, shunt_susceptance=(0.0, 0.0, 0.0), backend=None, workers=None) -> SParamBlock:
    """Three-port S-parameters of the T-junction divider over ``grid``.

    ``shunt_susceptance`` (siemens) places a shunt element at the junction end
    of each arm (input, branch A, branch B); zero gives the ideal junction.
    ``workers`` > 1 splits the sweep across threads; results do not depend on it.
    """
    freqs = _freqs_of(grid)
    shunt = np.asarray(shunt_susceptance, dtype=float)
    if shunt.shape != (3,) or not np.all(np.isfinite(shunt)):
        raise ValidationError("shunt_susceptance must be three finite values")
    zref = float(design.spec.system_impedance)
    zc, gl, ptr = _segment_tables(design, freqs)
    kernel = get_kernel(backend)
    if workers and workers > 1 and freqs.size > 1:
        chunks = np.array_split(np.arange(freqs.size), workers)
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda idx: kernel(zc, gl[idx], ptr, shunt, zref), chunks))
        s = np.concatenate(parts, axis=0)
    else:
        s = kernel(zc, gl, ptr, shunt, zref)
    order = np.argsort(freqs, kind="stable")
    if not np.array_equal(order, np.arange(freqs.size)):
        # SParamBlock wants increasing frequency; evaluation order is irrelevant
        freqs, s = freqs[order], s[order]
    return SParamBlock(freqs, s, zref, grid if isinstance(grid, FrequencyGrid) else None)
