"""Figures of merit and the comparison-table row."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import FrequencyOutOfRange, ValidationError

DB_FLOOR = -200.0

CIRCUIT_MODEL_NOTE = (
    "frequency, bandwidth, insertion loss and reflection come from the ideal-junction "
    "circuit model; full-wave junction effects are not included"
)


def magnitude_db(s) -> float:
    """20*log10|s|, with |s| = 0 mapped to -200 dB."""
    mag = abs(complex(s))
    if mag == 0.0:
        return DB_FLOOR
    return max(20.0 * math.log10(mag), DB_FLOOR)


def _db_array(values):
    mag = np.abs(values)
    with np.errstate(divide="ignore"):
        out = 20.0 * np.log10(mag)
    return np.maximum(out, DB_FLOOR)


@dataclass(frozen=True)
class MetricsReport:
    design_freq: float
    eval_freq: float
    return_loss_db: float
    insertion_loss_db: float
    output_match_db: float
    isolation_db: float
    fractional_bandwidth_pct: float
    band_lo: float
    band_hi: float
    threshold_db: float
    band_clipped: bool = False
    matched_at_f0: bool = True

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        flags = []
        if self.band_clipped:
            flags.append("BandClipped")
        if not self.matched_at_f0:
            flags.append("NotMatchedAtF0")
        lines = [
            f"f0                 {self.design_freq / 1e9:.6g} GHz (evaluated at {self.eval_freq / 1e9:.6g} GHz)",
            f"S11 (return loss)  {self.return_loss_db:.4f} dB",
            f"insertion loss     {self.insertion_loss_db:.4f} dB",
            f"S22 (output match) {self.output_match_db:.4f} dB",
            f"S23 (isolation)    {self.isolation_db:.4f} dB",
            f"bandwidth          {self.fractional_bandwidth_pct:.2f} % "
            f"({self.band_lo / 1e9:.4f}-{self.band_hi / 1e9:.4f} GHz at S11 <= {self.threshold_db:g} dB)",
        ]
        if flags:
            lines.append("flags              " + ", ".join(flags))
        return "\n".join(lines)


def _crossing(f_in, l_in, f_out, l_out, thr):
    # linear interpolation in dB between a passing and a failing point
    if l_out == l_in:
        return f_out
    t = (thr - l_in) / (l_out - l_in)
    return f_in + t * (f_out - f_in)


def band_edges(freqs, s11_db, f0, threshold_db):
    """(lo, hi, clipped, matched) of the contiguous S11 <= threshold band around f0."""
    k0 = int(np.argmin(np.abs(freqs - f0)))
    if s11_db[k0] > threshold_db:
        return f0, f0, False, False
    clipped = False
    k = k0
    while k > 0 and s11_db[k - 1] <= threshold_db:
        k -= 1
    if k == 0:
        lo, clipped = freqs[0], True
    else:
        lo = _crossing(freqs[k], s11_db[k], freqs[k - 1], s11_db[k - 1], threshold_db)
    k = k0
    n = len(freqs)
    while k < n - 1 and s11_db[k + 1] <= threshold_db:
        k += 1
    if k == n - 1:
        hi, clipped = freqs[-1], True
    else:
        hi = _crossing(freqs[k], s11_db[k], freqs[k + 1], s11_db[k + 1], threshold_db)
    return float(lo), float(hi), clipped, True


def report(block, f0: float, threshold_db: float = -10.0) -> MetricsReport:
    if block.ports != 3:
        raise ValidationError(f"divider metrics need a 3-port block, got {block.ports} ports")
    if not threshold_db < 0:
        raise ValidationError(f"threshold must be negative, got {threshold_db}")
    freqs = block.freqs
    if not (freqs[0] <= f0 <= freqs[-1]):
        raise FrequencyOutOfRange(
            f"f0 = {f0 / 1e9:g} GHz outside data range {freqs[0] / 1e9:g}-{freqs[-1] / 1e9:g} GHz"
        )
    k0 = block.nearest_index(f0)
    s = block.s[k0]
    s11_db = _db_array(block.s[:, 0, 0])
    lo, hi, clipped, matched = band_edges(freqs, s11_db, f0, threshold_db)
    return MetricsReport(
        design_freq=float(f0),
        eval_freq=float(freqs[k0]),
        return_loss_db=magnitude_db(s[0, 0]),
        insertion_loss_db=-magnitude_db(s[1, 0]),
        output_match_db=magnitude_db(s[1, 1]),
        isolation_db=magnitude_db(s[1, 2]),
        fractional_bandwidth_pct=(hi - lo) / f0 * 100.0,
        band_lo=lo,
        band_hi=hi,
        threshold_db=float(threshold_db),
        band_clipped=clipped,
        matched_at_f0=matched,
    )


COLUMNS = (
    ("ports", "Number of ports"),
    ("frequency", "Frequency"),
    ("fractional_bandwidth", "Fractional bandwidth"),
    ("insertion_loss", "Insertion loss"),
    ("size", "Size (mm)"),
    ("material", "Material"),
    ("structure", "Structure"),
    ("reflection_coefficient", "Reflection coefficient"),
)


@dataclass(frozen=True)
class ComparisonRow:
    """One row of the published-divider comparison table, as display strings."""

    label: str
    ports: int
    frequency: str
    fractional_bandwidth: str
    insertion_loss: str
    size: str
    material: str
    structure: str
    reflection_coefficient: str
    note: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> ComparisonRow:
        return cls(**json.loads(text))

    def to_text(self) -> str:
        cells = [("", self.label)] + [(title, str(getattr(self, key))) for key, title in COLUMNS]
        widths = [max(len(t), len(v)) for t, v in cells]
        head = "  ".join(t.ljust(w) for (t, _), w in zip(cells, widths))
        body = "  ".join(v.ljust(w) for (_, v), w in zip(cells, widths))
        return f"{head.rstrip()}\n{body.rstrip()}"


def _fmt(x, digits=1):
    s = f"{x:.{digits}f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


def comparison_row(design, rep: MetricsReport, label: str = "Proposed work") -> ComparisonRow:
    material = design.substrate.material or "unspecified"
    return ComparisonRow(
        label=label,
        ports=3,
        frequency=_fmt(rep.design_freq / 1e9, 2),
        fractional_bandwidth=f"{rep.fractional_bandwidth_pct:.0f}%",
        insertion_loss=_fmt(rep.insertion_loss_db, 1),
        size=f"{_fmt(design.board_width * 1e3, 1)}x{_fmt(design.board_length * 1e3, 1)}",
        material=material,
        structure="T-junction",
        reflection_coefficient=_fmt(rep.return_loss_db, 1),
        note=CIRCUIT_MODEL_NOTE,
    )
