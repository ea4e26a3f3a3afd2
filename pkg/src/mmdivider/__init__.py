"""Synthesis and circuit-level analysis of T-junction microstrip power dividers."""

__version__ = "0.1.0"

from .divider import (
    DesignWarning,
    DividerDesign,
    DividerSpec,
    Provenance,
    paper_reference_design,
    quarter_wave_impedance,
    synthesize_divider,
)
from .errors import DividerError, NumericalError, ValidationError
from .kernels import BACKEND
from .metrics import MetricsReport, comparison_row, magnitude_db, report
from .microstrip import (
    LineElectricals,
    MicrostripLine,
    analyze_line,
    guided_wavelength,
    quarter_wave_length,
    synthesize_width,
)
from .netcalc import SParamBlock, TwoPortABCD, abcd_to_s, assemble_divider_s, cascade, line_abcd
from .optimizer import Objective, OptimizationProblem, evaluate_objective, optimize
from .rfcore import FrequencyGrid, Substrate, make_frequency_grid, rogers3003, validate_substrate

__all__ = [
    "BACKEND",
    "DesignWarning",
    "DividerDesign",
    "DividerError",
    "DividerSpec",
    "FrequencyGrid",
    "LineElectricals",
    "MetricsReport",
    "MicrostripLine",
    "NumericalError",
    "Objective",
    "OptimizationProblem",
    "Provenance",
    "SParamBlock",
    "Substrate",
    "TwoPortABCD",
    "ValidationError",
    "abcd_to_s",
    "analyze_line",
    "assemble_divider_s",
    "cascade",
    "comparison_row",
    "evaluate_objective",
    "guided_wavelength",
    "line_abcd",
    "magnitude_db",
    "make_frequency_grid",
    "optimize",
    "paper_reference_design",
    "quarter_wave_impedance",
    "quarter_wave_length",
    "report",
    "rogers3003",
    "synthesize_divider",
    "synthesize_width",
    "validate_substrate",
]
