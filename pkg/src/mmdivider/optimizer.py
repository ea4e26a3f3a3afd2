"""Bounded Nelder-Mead tuning of the quarter-wave transformers."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleBounds, ValidationError
from .microstrip import WH_MAX, WH_MIN
from .netcalc import assemble_divider_s

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5
VARIABLES = ("transformer_width", "transformer_length")


class Objective(str, enum.Enum):
    MINIMAX_S11 = "minimax"
    MEAN_SQUARE_S11 = "meansquare"


def s11_objective(s11, objective=Objective.MINIMAX_S11) -> float:
    mag = np.abs(np.asarray(s11))
    if Objective(objective) is Objective.MINIMAX_S11:
        return float(mag.max())
    return float(np.mean(mag**2))


def evaluate_objective(design, band, objective=Objective.MINIMAX_S11, backend=None) -> float:
    block = assemble_divider_s(design, band, backend=backend)
    return s11_objective(block.s[:, 0, 0], objective)


@dataclass(frozen=True)
class OptimizationProblem:
    base: object
    band: object
    variables: tuple[str, ...] = VARIABLES
    bounds: dict | None = None
    objective: Objective = Objective.MINIMAX_S11
    budget: int = 500
    tolerance: float = 1e-6

    def __post_init__(self):
        variables = tuple(self.variables)
        if not variables or any(v not in VARIABLES for v in variables) or len(set(variables)) != len(variables):
            raise ValidationError(f"variables must be a non-empty subset of {VARIABLES}, got {variables}")
        if self.budget < 10:
            raise ValidationError(f"budget must be at least 10, got {self.budget}")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        band = np.atleast_1d(np.asarray(getattr(self.band, "values", self.band), dtype=float))
        if band.size == 0 or np.any(band <= 0) or np.any(np.diff(band) <= 0):
            raise ValidationError("band must be increasing positive frequencies")
        bounds = dict(self.bounds or default_bounds(self.base))
        h = self.base.substrate.height
        for v in variables:
            if v not in bounds:
                raise ValidationError(f"no bounds for {v}")
            lo, hi = bounds[v]
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InfeasibleBounds(f"{v}: need lo < hi, got ({lo}, {hi})")
            if v == "transformer_width" and (lo < WH_MIN * h * (1 - 1e-12) or hi > WH_MAX * h * (1 + 1e-12)):
                raise InfeasibleBounds("transformer_width bounds leave the microstrip validity window")
            if v == "transformer_length" and lo < 0:
                raise InfeasibleBounds("transformer_length lower bound is negative")
            x0 = _get(self.base, v)
            if not lo <= x0 <= hi:
                raise InfeasibleBounds(f"{v}: starting value {x0} outside bounds ({lo}, {hi})")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "band", band)
        object.__setattr__(self, "objective", Objective(self.objective))


def default_bounds(design) -> dict:
    t = design.transformer_a
    h = design.substrate.height
    return {
        "transformer_width": (max(0.5 * t.width, WH_MIN * h), min(2.0 * t.width, WH_MAX * h)),
        "transformer_length": (0.5 * t.length, 1.5 * t.length),
    }


def _get(design, name):
    t = design.transformer_a
    return t.width if name == "transformer_width" else t.length


def _apply(design, variables, x):
    kw = {"width" if v == "transformer_width" else "length": float(val) for v, val in zip(variables, x)}
    return design.with_transformer(**kw)


@dataclass
class TraceEntry:
    iteration: int
    evaluations: int
    best_objective: float
    best_point: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "iteration": self.iteration,
                "evaluations": self.evaluations,
                "best_objective": self.best_objective,
                "best": self.best_point,
            }
        )


@dataclass
class OptimizationResult:
    design: object
    objective: float
    initial_objective: float
    trace: list[TraceEntry]
    evaluations: int
    converged: bool
    budget_exhausted: bool
    evaluated_points: list[tuple[tuple[float, ...], float]] = field(default_factory=list)

    def __iter__(self):
        # unpacks as (design, trace)
        return iter((self.design, self.trace))

    def trace_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.trace)


def optimize(problem: OptimizationProblem, backend=None) -> OptimizationResult:
    """Minimise the S11 objective over the selected transformer dimensions.

    Initial simplex: base point plus a 2 % offset along each variable. Candidate
    points that leave the bounds box are mirrored back across the violated
    face (then clipped, for overshoots wider than the box). The best vertex
    is never discarded, so the best objective never increases.
    """
    variables = problem.variables
    lo = np.array([problem.bounds[v][0] for v in variables])
    hi = np.array([problem.bounds[v][1] for v in variables])
    n = len(variables)
    base = problem.base
    evaluated = []

    def f(x):
        x = np.where(x < lo, 2 * lo - x, x)
        x = np.clip(np.where(x > hi, 2 * hi - x, x), lo, hi)
        val = evaluate_objective(_apply(base, variables, x), problem.band, problem.objective, backend)
        evaluated.append((tuple(float(v) for v in x), val))
        return x, val

    x0 = np.array([_get(base, v) for v in variables], dtype=float)
    simplex, values = [], []
    x, fx = f(x0)
    simplex.append(x)
    values.append(fx)
    initial = fx
    for i in range(n):
        step = np.zeros(n)
        step[i] = 0.02 * x0[i] if x0[i] != 0 else 0.02 * (hi[i] - lo[i])
        cand = x0 + step
        if cand[i] > hi[i]:
            cand = x0 - step
        x, fx = f(cand)
        simplex.append(x)
        values.append(fx)

    def point(x):
        return {v: float(val) for v, val in zip(variables, x)}

    trace = []
    iteration = 0
    converged = False

    def record():
        order = np.argsort(values, kind="stable")
        b = order[0]
        trace.append(TraceEntry(iteration, len(evaluated), float(values[b]), point(simplex[b])))

    record()
    while len(evaluated) < problem.budget:
        order = np.argsort(values, kind="stable")
        simplex = [simplex[k] for k in order]
        values = [values[k] for k in order]

        pts = np.array(simplex)
        scale = np.maximum(np.abs(pts[0]), 1e-300)
        spread = np.max(np.abs(pts[1:] - pts[0]) / scale)
        if spread <= problem.tolerance:
            converged = True
            break

        iteration += 1
        centroid = pts[:-1].mean(axis=0)
        worst = pts[-1]
        xr, fr = f(centroid + REFLECT * (centroid - worst))
        if fr < values[0]:
            if len(evaluated) < problem.budget:
                xe, fe = f(centroid + EXPAND * (xr - centroid))
            else:
                fe = math.inf
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
        elif fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc, fc = f(centroid + CONTRACT * (xr - centroid))
                accept = fc <= fr
            else:
                xc, fc = f(centroid + CONTRACT * (worst - centroid))
                accept = fc < values[-1]
            if accept:
                simplex[-1], values[-1] = xc, fc
            else:
                for k in range(1, n + 1):
                    if len(evaluated) >= problem.budget:
                        break
                    simplex[k], values[k] = f(pts[0] + SHRINK * (simplex[k] - pts[0]))
        record()

    b = int(np.argmin(values))
    best_x, best_val = simplex[b], values[b]
    if best_val > initial:  # cannot happen: the start vertex stays in the simplex until beaten
        best_x, best_val = evaluated[0][0], initial
    design = base if np.array_equal(best_x, x0) else _apply(base, variables, best_x)
    return OptimizationResult(
        design=design,
        objective=float(best_val),
        initial_objective=float(initial),
        trace=trace,
        evaluations=len(evaluated),
        converged=converged,
        budget_exhausted=not converged,
        evaluated_points=evaluated,
    )
