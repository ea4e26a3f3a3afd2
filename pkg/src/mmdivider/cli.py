"""Command-line interface.

Exit codes: 0 success, 1 validation or parse error, 2 numerical failure.
Diagnostics go to stderr; data goes to stdout unless ``-o`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .divider import DividerSpec, paper_reference_design, synthesize_divider
from .errors import NumericalError, ValidationError
from .geometry import dumps_design, export_geometry, load_design
from .metrics import comparison_row, report
from .netcalc import assemble_divider_s
from .optimizer import Objective, OptimizationProblem, default_bounds, optimize
from .rfcore import COPPER_CONDUCTIVITY, DEFAULT_LOSS_TANGENT, Substrate, make_frequency_grid
from .touchstone import read_touchstone, write_touchstone
from .units import parse_quantity

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _freq(text):
    return parse_quantity(text, "frequency")


def _length(text):
    return parse_quantity(text, "length")


def _number(text):
    return parse_quantity(text)


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_synth(args):
    sub = Substrate(
        rel_permittivity=args.er,
        height=args.h,
        loss_tangent=0.0 if args.lossless else args.tand,
        metal_thickness=args.t,
        metal_conductivity=math.inf if args.lossless else args.sigma,
        material=args.material,
    )
    spec = DividerSpec(
        design_freq=args.f0,
        substrate=sub,
        system_impedance=args.z0,
        input_line_length=args.input_length,
        output_line_length=args.output_length,
    )
    design = synthesize_divider(spec)
    _emit(dumps_design(design), args.output)
    t = design.transformer_a
    print(
        f"transformer {design.transformer_impedance:.3f} ohm: w = {t.width * 1e3:.4f} mm, "
        f"l = {t.length * 1e3:.4f} mm; lines w = {design.input_line.width * 1e3:.4f} mm",
        file=sys.stderr,
    )


def cmd_paper_design(args):
    design = paper_reference_design(args.f0)
    for w in design.warnings:
        print(f"warning: {w.value}", file=sys.stderr)
    _emit(dumps_design(design), args.output)


def _csv_text(block):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    pairs = [(1, 1), (1, 2), (2, 1), (2, 2)]
    header = ["freq_hz"]
    for i, j in pairs:
        header += [f"s{i}{j}_db", f"s{i}{j}_deg"]
    writer.writerow(header)
    with np.errstate(divide="ignore"):
        for k, f in enumerate(block.freqs):
            row = [repr(float(f))]
            for i, j in pairs:
                z = block.s[k, i - 1, j - 1]
                row += [f"{max(20 * math.log10(abs(z)) if abs(z) else -200.0, -200.0):.6f}", f"{math.degrees(math.atan2(z.imag, z.real)):.6f}"]
            writer.writerow(row)
    return buf.getvalue()


def cmd_analyze(args):
    design = load_design(args.design)
    grid = make_frequency_grid(args.fstart, args.fstop, args.points)
    block = assemble_divider_s(design, grid, backend=args.backend)
    comments = [
        f"mmdivider {__version__}: {design.provenance.value} T-junction divider, f0 = {design.spec.design_freq / 1e9:g} GHz",
        "ports: 1 = input, 2 and 3 = outputs",
    ]
    _emit(write_touchstone(block, args.format, comments=comments), args.output)
    if args.csv:
        _emit(_csv_text(block), args.csv)


def cmd_metrics(args):
    block = read_touchstone(args.file)
    rep = report(block, args.f0, args.threshold)
    row = None
    if args.design:
        row = comparison_row(load_design(args.design), rep)
    if args.json:
        out = {"report": rep.to_dict()}
        if row is not None:
            out["comparison_row"] = json.loads(row.to_json())
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        sys.stdout.write(rep.to_text() + "\n")
        if row is not None:
            sys.stdout.write("\n" + row.to_text() + "\n")
            sys.stdout.write(f"note: {row.note}\n")


def _band(text):
    try:
        lo, hi = text.split(":")
    except ValueError:
        raise argparse.ArgumentTypeError(f"band must look like 24GHz:32GHz, got {text!r}") from None
    return _freq(lo), _freq(hi)


def cmd_optimize(args):
    design = load_design(args.design)
    lo, hi = args.band
    band = [lo] if lo == hi else make_frequency_grid(lo, hi, args.points)
    names = {"width": "transformer_width", "length": "transformer_length"}
    variables = tuple(names[v.strip()] for v in args.vars.split(",") if v.strip())
    bounds = default_bounds(design)
    problem = OptimizationProblem(
        base=design,
        band=band,
        variables=variables,
        bounds=bounds,
        objective=Objective(args.objective),
        budget=args.budget,
    )
    result = optimize(problem)
    if result.budget_exhausted:
        print(f"warning: budget of {args.budget} evaluations exhausted; returning best found", file=sys.stderr)
    print(
        f"objective {result.initial_objective:.6g} -> {result.objective:.6g} in {result.evaluations} evaluations",
        file=sys.stderr,
    )
    _emit(dumps_design(result.design), args.output)
    if args.trace:
        _emit(result.trace_jsonl(), args.trace)


def cmd_export(args):
    _emit(export_geometry(load_design(args.design), args.format), args.output)


def build_parser():
    p = _Parser(prog="mmdivider", description="T-junction microstrip power divider toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="synthesize a divider geometry")
    s.add_argument("--f0", type=_freq, required=True)
    s.add_argument("--z0", type=_number, default=50.0)
    s.add_argument("--er", type=_number, required=True)
    s.add_argument("--h", type=_length, required=True)
    s.add_argument("--t", type=_length, default=17e-6)
    s.add_argument("--tand", type=_number, default=DEFAULT_LOSS_TANGENT)
    s.add_argument("--sigma", type=_number, default=COPPER_CONDUCTIVITY)
    s.add_argument("--lossless", action="store_true")
    s.add_argument("--input-length", type=_length, default=20e-3)
    s.add_argument("--output-length", type=_length, default=20e-3)
    s.add_argument("--material", default="")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("paper-design", help="emit the published reference geometry")
    s.add_argument("--f0", type=_freq, default=28e9)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_paper_design)

    s = sub.add_parser("analyze", help="sweep S-parameters of a design")
    s.add_argument("design")
    s.add_argument("--fstart", type=_freq, required=True)
    s.add_argument("--fstop", type=_freq, required=True)
    s.add_argument("--points", type=int, default=401)
    s.add_argument("--format", choices=["MA", "RI", "DB"], default="MA", type=str.upper)
    s.add_argument("--backend", choices=["compiled", "python"])
    s.add_argument("-o", "--output")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("metrics", help="figures of merit from a Touchstone file")
    s.add_argument("file")
    s.add_argument("--f0", type=_freq, required=True)
    s.add_argument("--threshold", type=_number, default=-10.0)
    s.add_argument("--design", help="geometry JSON supplying size and material for the comparison row")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("optimize", help="tune the transformers for minimum in-band S11")
    s.add_argument("design")
    s.add_argument("--band", type=_band, required=True)
    s.add_argument("--points", type=int, default=81)
    s.add_argument("--objective", choices=[o.value for o in Objective], default="minimax")
    s.add_argument("--vars", default="width,length")
    s.add_argument("--budget", type=int, default=500)
    s.add_argument("-o", "--output")
    s.add_argument("--trace")
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("export", help="export geometry as SVG or JSON")
    s.add_argument("design")
    s.add_argument("--format", choices=["svg", "json"], required=True, type=str.lower)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    try:
        args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValidationError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
