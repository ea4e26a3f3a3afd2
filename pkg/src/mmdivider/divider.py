"""T-junction divider synthesis and the published reference geometry."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .errors import NonPositiveImpedance, ValidationError
from .microstrip import MicrostripLine, analyze_line, quarter_wave_length, synthesize_width
from .rfcore import Substrate, rogers3003

BOARD_MARGIN = 2e-3


class Provenance(str, enum.Enum):
    SYNTHESIZED = "Synthesized"
    PAPER_TABLE1 = "PaperTable1"
    TUNED = "Tuned"


class DesignWarning(str, enum.Enum):
    QWT_WIDTH_ANOMALY = "QwtWidthAnomaly"
    INPUT_WIDTH_MISMATCH = "InputWidthImpedanceMismatch"


@dataclass(frozen=True)
class DividerSpec:
    design_freq: float
    substrate: Substrate
    system_impedance: float = 50.0
    input_line_length: float = 20e-3
    output_line_length: float = 20e-3

    def __post_init__(self):
        if not (math.isfinite(self.design_freq) and self.design_freq > 0):
            raise ValidationError(f"design frequency must be positive, got {self.design_freq}")
        if not (math.isfinite(self.system_impedance) and self.system_impedance > 0):
            raise NonPositiveImpedance(f"system impedance must be positive, got {self.system_impedance}")
        for name in ("input_line_length", "output_line_length"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValidationError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class DividerDesign:
    """Symmetric T-junction divider: input line, two quarter-wave
    transformers and two output (connector) lines on one board."""

    spec: DividerSpec
    input_line: MicrostripLine
    transformer_a: MicrostripLine
    transformer_b: MicrostripLine
    output_line_a: MicrostripLine
    output_line_b: MicrostripLine
    transformer_impedance: float
    board_width: float
    board_length: float
    provenance: Provenance = Provenance.SYNTHESIZED
    warnings: tuple[DesignWarning, ...] = field(default=())

    def __post_init__(self):
        if self.transformer_a != self.transformer_b or self.output_line_a != self.output_line_b:
            raise ValidationError("divider branches must be identical")
        w, l = trace_extent(self)
        if w > self.board_width + 1e-12 or l > self.board_length + 1e-12:
            raise ValidationError(
                f"board {self.board_width * 1e3:g}x{self.board_length * 1e3:g} mm does not enclose "
                f"traces spanning {w * 1e3:g}x{l * 1e3:g} mm"
            )
        object.__setattr__(self, "provenance", Provenance(self.provenance))
        object.__setattr__(self, "warnings", tuple(DesignWarning(x) for x in self.warnings))
        if self.provenance is Provenance.SYNTHESIZED:
            t = self.transformer_a
            target = quarter_wave_impedance(self.spec.system_impedance)
            if abs(analyze_line(t.substrate, t.width).char_impedance - target) > 0.01:
                raise ValidationError("synthesized transformer is not at Z0*sqrt(2)")
            if abs(t.length - quarter_wave_length(t.substrate, t.width, self.spec.design_freq)) > 1e-9:
                raise ValidationError("synthesized transformer is not a quarter wave long at f0")

    @property
    def substrate(self) -> Substrate:
        return self.spec.substrate

    def with_transformer(self, width=None, length=None, provenance=Provenance.TUNED) -> DividerDesign:
        """Copy with both transformers resized (board grown if needed)."""
        t = self.transformer_a
        t = MicrostripLine(t.substrate, t.width if width is None else width, t.length if length is None else length)
        w, l = _extent(self.input_line, t, self.output_line_a)
        return replace(
            self,
            transformer_a=t,
            transformer_b=t,
            provenance=provenance,
            board_width=max(self.board_width, w),
            board_length=max(self.board_length, l),
        )


def _extent(inp, trans, out):
    width = 2.0 * (trans.length + out.length)
    width = max(width, inp.width)
    half = max(trans.width, out.width) / 2.0
    length = max(inp.length, half) + half
    return width, length


def trace_extent(design) -> tuple[float, float]:
    """(x, y) size of the trace bounding box.

    Layout: the input line runs along y from the board edge to the junction;
    the two branches run along +-x from the junction, centred on it.
    """
    return _extent(design.input_line, design.transformer_a, design.output_line_a)


def quarter_wave_impedance(z0: float) -> float:
    """Impedance of the quarter-wave section matching two parallel z0 loads to z0."""
    if not (math.isfinite(z0) and z0 > 0):
        raise NonPositiveImpedance(f"impedance must be positive, got {z0}")
    return z0 * math.sqrt(2.0)


def synthesize_divider(spec: DividerSpec) -> DividerDesign:
    sub = spec.substrate
    z_t = quarter_wave_impedance(spec.system_impedance)
    w_t = synthesize_width(sub, z_t)
    l_t = quarter_wave_length(sub, w_t, spec.design_freq)
    w_0 = synthesize_width(sub, spec.system_impedance)

    inp = MicrostripLine(sub, w_0, spec.input_line_length)
    trans = MicrostripLine(sub, w_t, l_t)
    out = MicrostripLine(sub, w_0, spec.output_line_length)
    w, l = _extent(inp, trans, out)
    return DividerDesign(
        spec=spec,
        input_line=inp,
        transformer_a=trans,
        transformer_b=trans,
        output_line_a=out,
        output_line_b=out,
        transformer_impedance=z_t,
        board_width=w + 2 * BOARD_MARGIN,
        board_length=l + 2 * BOARD_MARGIN,
        provenance=Provenance.SYNTHESIZED,
    )


# Published dimensions in mm, reproduced as printed.
TABLE1_MM = {
    "input_length": 20.0,
    "input_width": 3.1,
    "metal_thickness": 0.017,
    "qwt_length": 1.7,
    "qwt_width": 30.0,
    "connector_length": 20.0,
    "connector_width": 3.1,
    "board_width": 50.0,
    "board_length": 80.0,
    "substrate_height": 1.6,
}


def paper_reference_design(design_freq: float = 28e9, substrate: Substrate | None = None) -> DividerDesign:
    """The published 28 GHz Roger 3003 divider, dimensions taken verbatim.

    The quarter-wave width (30 mm) is implausible for a 70 ohm line and the
    3.1 mm lines are not 50 ohm on this stack-up; both are flagged in
    ``warnings`` but kept, so the analysis sees exactly what was printed.
    """
    t = TABLE1_MM
    mm = 1e-3
    sub = substrate or rogers3003(height=t["substrate_height"] * mm, metal_thickness=t["metal_thickness"] * mm)
    spec = DividerSpec(
        design_freq=design_freq,
        substrate=sub,
        system_impedance=50.0,
        input_line_length=t["input_length"] * mm,
        output_line_length=t["connector_length"] * mm,
    )
    trans = MicrostripLine(sub, t["qwt_width"] * mm, t["qwt_length"] * mm)
    out = MicrostripLine(sub, t["connector_width"] * mm, t["connector_length"] * mm)
    warnings = [DesignWarning.QWT_WIDTH_ANOMALY]
    if abs(analyze_line(sub, t["input_width"] * mm).char_impedance - 50.0) > 1.0:
        warnings.append(DesignWarning.INPUT_WIDTH_MISMATCH)
    return DividerDesign(
        spec=spec,
        input_line=MicrostripLine(sub, t["input_width"] * mm, t["input_length"] * mm),
        transformer_a=trans,
        transformer_b=trans,
        output_line_a=out,
        output_line_b=out,
        transformer_impedance=quarter_wave_impedance(50.0),
        board_width=t["board_width"] * mm,
        board_length=t["board_length"] * mm,
        provenance=Provenance.PAPER_TABLE1,
        warnings=tuple(warnings),
    )
