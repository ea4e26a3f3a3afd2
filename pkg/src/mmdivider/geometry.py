"""Geometry persistence (JSON) and drawing export (SVG).

The JSON document is the single persistence format for designs::

    {
      "format": "mmdivider-geometry", "version": 1,
      "spec": {"design_freq", "system_impedance", "input_line_length", "output_line_length"},
      "substrate": {...},
      "transformer_impedance": ohms,
      "segments": [{"name", "x", "y", "width", "length", "impedance", "axis"}, ...],
      "board": {"w", "l"},
      "provenance": "Synthesized" | "PaperTable1" | "Tuned",
      "warnings": [...]
    }

All lengths are metres. ``x``/``y`` give the centre of each trace rectangle
with the board spanning ``[0, w] x [0, l]``; ``axis`` is the direction of
propagation. ``impedance`` is the quasi-static impedance of the trace as
drawn, informational only.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from .divider import DividerDesign, DividerSpec, trace_extent
from .errors import ValidationError
from .microstrip import MicrostripLine, analyze_line
from .rfcore import validate_substrate

FORMAT_TAG = "mmdivider-geometry"
SEGMENT_NAMES = ("input", "transformer_a", "output_a", "transformer_b", "output_b")
SVG_UNITS_PER_METRE = 1e4  # 1 user unit = 0.1 mm


def layout(design: DividerDesign) -> list[dict]:
    """Trace rectangles in board coordinates, trace group centred on the board."""
    ext_w, ext_l = trace_extent(design)
    inp, t, o = design.input_line, design.transformer_a, design.output_line_a
    half = max(t.width, o.width) / 2.0
    xj = design.board_width / 2.0
    yj = (design.board_length - ext_l) / 2.0 + max(inp.length, half)

    def seg(name, line, x, y, axis):
        return {
            "name": name,
            "x": x,
            "y": y,
            "width": line.width,
            "length": line.length,
            "impedance": analyze_line(line.substrate, line.width).char_impedance,
            "axis": axis,
        }

    return [
        seg("input", inp, xj, yj - inp.length / 2.0, "y"),
        seg("transformer_a", t, xj - t.length / 2.0, yj, "x"),
        seg("output_a", o, xj - t.length - o.length / 2.0, yj, "x"),
        seg("transformer_b", design.transformer_b, xj + t.length / 2.0, yj, "x"),
        seg("output_b", design.output_line_b, xj + t.length + o.length / 2.0, yj, "x"),
    ]


def design_to_dict(design: DividerDesign) -> dict:
    spec = design.spec
    return {
        "format": FORMAT_TAG,
        "version": 1,
        "spec": {
            "design_freq": spec.design_freq,
            "system_impedance": spec.system_impedance,
            "input_line_length": spec.input_line_length,
            "output_line_length": spec.output_line_length,
        },
        "substrate": design.substrate.to_dict(),
        "transformer_impedance": design.transformer_impedance,
        "segments": layout(design),
        "board": {"w": design.board_width, "l": design.board_length},
        "provenance": design.provenance.value,
        "warnings": [w.value for w in design.warnings],
    }


def design_from_dict(data: dict) -> DividerDesign:
    try:
        if data.get("format", FORMAT_TAG) != FORMAT_TAG:
            raise ValidationError(f"not a geometry document (format={data.get('format')!r})")
        sub = validate_substrate(data["substrate"])
        s = data["spec"]
        spec = DividerSpec(
            design_freq=float(s["design_freq"]),
            substrate=sub,
            system_impedance=float(s["system_impedance"]),
            input_line_length=float(s["input_line_length"]),
            output_line_length=float(s["output_line_length"]),
        )
        segs = {seg["name"]: seg for seg in data["segments"]}
        missing = [n for n in SEGMENT_NAMES if n not in segs]
        if missing:
            raise ValidationError(f"geometry is missing segments {missing}")
        lines = {n: MicrostripLine(sub, float(segs[n]["width"]), float(segs[n]["length"])) for n in SEGMENT_NAMES}
        return DividerDesign(
            spec=spec,
            input_line=lines["input"],
            transformer_a=lines["transformer_a"],
            transformer_b=lines["transformer_b"],
            output_line_a=lines["output_a"],
            output_line_b=lines["output_b"],
            transformer_impedance=float(data["transformer_impedance"]),
            board_width=float(data["board"]["w"]),
            board_length=float(data["board"]["l"]),
            provenance=data.get("provenance", "Synthesized"),
            warnings=tuple(data.get("warnings", ())),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"malformed geometry document: {exc!r}") from None


def dumps_design(design: DividerDesign) -> str:
    return json.dumps(design_to_dict(design), indent=2) + "\n"


def loads_design(text: str) -> DividerDesign:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"geometry JSON is invalid: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError("geometry JSON must be an object")
    return design_from_dict(data)


def load_design(path) -> DividerDesign:
    with open(path) as fh:
        return loads_design(fh.read())


def export_svg(design: DividerDesign) -> str:
    k = SVG_UNITS_PER_METRE
    bw, bl = design.board_width * k, design.board_length * k

    def fmt(v):
        return f"{v:.3f}".rstrip("0").rstrip(".")

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {fmt(bw)} {fmt(bl)}" '
        f'width="{fmt(bw / 10)}mm" height="{fmt(bl / 10)}mm">',
        f"  <title>{escape(design.provenance.value)} divider, f0 = {design.spec.design_freq / 1e9:g} GHz</title>",
        f'  <rect class="board" x="0" y="0" width="{fmt(bw)}" height="{fmt(bl)}" fill="#2e5e3e" stroke="black"/>',
    ]
    for seg in layout(design):
        if seg["axis"] == "y":
            w, h = seg["width"] * k, seg["length"] * k
        else:
            w, h = seg["length"] * k, seg["width"] * k
        # SVG y grows downward
        cx, cy = seg["x"] * k, bl - seg["y"] * k
        out.append(
            f'  <rect class="trace" id="{seg["name"]}" x="{fmt(cx - w / 2)}" y="{fmt(cy - h / 2)}" '
            f'width="{fmt(w)}" height="{fmt(h)}" fill="#d4a017"/>'
        )
        label = f'{seg["name"]}: {seg["length"] * 1e3:.3f} x {seg["width"] * 1e3:.3f} mm'
        out.append(
            f'  <text class="dim" x="{fmt(cx)}" y="{fmt(cy - h / 2 - 4)}" font-size="12" '
            f'text-anchor="middle">{escape(label)}</text>'
        )
    out.append(
        f'  <text class="dim" x="{fmt(bw / 2)}" y="{fmt(bl - 8)}" font-size="14" text-anchor="middle">'
        f"board {design.board_width * 1e3:g} x {design.board_length * 1e3:g} mm</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_geometry(design: DividerDesign, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return dumps_design(design)
    if fmt == "svg":
        return export_svg(design)
    raise ValidationError(f"unknown export format {fmt!r} (json or svg)")
