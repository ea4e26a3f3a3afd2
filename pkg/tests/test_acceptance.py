"""Acceptance suite: one test per criterion at its pinned tolerance.

Every test reports through the ``criterion`` fixture, which prints a
PASS/FAIL line and repeats all of them in the terminal summary.
"""

import json
import time
from functools import reduce

import numpy as np

from mmdivider.cli import main
from mmdivider.divider import DividerSpec, paper_reference_design, quarter_wave_impedance, synthesize_divider
from mmdivider.metrics import magnitude_db, report
from mmdivider.microstrip import analyze_line, synthesize_width
from mmdivider.netcalc import SParamBlock, assemble_divider_s, cascade, divider_arms, line_abcd
from mmdivider.optimizer import OptimizationProblem, optimize
from mmdivider.rfcore import SPEED_OF_LIGHT, Substrate, make_frequency_grid, rogers3003
from mmdivider.touchstone import parse_touchstone, write_touchstone

from oracles import nodal_divider_s

F0 = 28e9


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t


def test_01_transformer_impedance(criterion):
    z = quarter_wave_impedance(50.0)
    criterion(1, "transformer impedance", abs(z - 70.7107) <= 0.001, f"Zt = {z:.5f} ohm (target 70.7107 +- 0.001)")


def test_02_quarter_wave_sizing(criterion):
    free = SPEED_OF_LIGHT / F0 / 4
    rel = abs(free - 2.675e-3) / 2.675e-3
    design = synthesize_divider(DividerSpec(F0, rogers3003()))
    lt = design.transformer_a.length
    ok = abs(free - 2.677e-3) <= 0.0005e-3 and rel <= 0.0025 and abs(lt - 1.7e-3) <= 0.1e-3
    criterion(
        2,
        "quarter-wave sizing",
        ok,
        f"free-space lambda/4 = {free * 1e3:.4f} mm ({rel * 100:.3f}% from 2.675), transformer = {lt * 1e3:.4f} mm (1.7 +- 0.1)",
    )


def test_03_ideal_split(criterion):
    with Timer() as t:
        design = synthesize_divider(DividerSpec(F0, rogers3003().lossless()))
        s = assemble_divider_s(design, [F0]).s[0]
        arms = [reduce(cascade, (line_abcd(seg, F0) for seg in arm)).as_array() for arm in divider_arms(design)]
        oracle = nodal_divider_s(arms, 50.0)
    s11, s21, s31 = magnitude_db(s[0, 0]), magnitude_db(s[1, 0]), magnitude_db(s[2, 0])
    s22, s23 = magnitude_db(s[1, 1]), magnitude_db(s[1, 2])
    dev = float(np.max(np.abs(s - oracle)))
    ok = (
        s11 <= -80
        and abs(s21 + 3.0103) <= 0.001
        and abs(s31 + 3.0103) <= 0.001
        and abs(s22 + 6.0206) <= 0.01
        and abs(s23 + 6.0206) <= 0.01
        and dev <= 1e-9
        and t.elapsed < 1.0
    )
    criterion(
        3,
        "ideal-split fixpoint",
        ok,
        f"S11 = {s11:.1f} dB, S21 = {s21:.5f}, S31 = {s31:.5f}, S22 = {s22:.4f}, S23 = {s23:.4f} dB, "
        f"|S - nodal oracle| = {dev:.1e}, {t.elapsed:.3f} s",
    )


def test_04_physics_invariants(criterion):
    grid = make_frequency_grid(14e9, 42e9, 401)
    with Timer() as t:
        lossless = assemble_divider_s(synthesize_divider(DividerSpec(F0, rogers3003().lossless())), grid).s
        lossy_blocks = [
            assemble_divider_s(synthesize_divider(DividerSpec(F0, rogers3003())), grid).s,
            assemble_divider_s(paper_reference_design(), grid).s,
        ]
        everything = [lossless] + lossy_blocks
        recip = max(np.max(np.abs(s - np.swapaxes(s, 1, 2))) for s in everything)
        eye = np.eye(3)
        unit = np.max(np.abs(np.conj(np.swapaxes(lossless, 1, 2)) @ lossless - eye))
        sv = max(np.max(np.linalg.svd(s, compute_uv=False)) for s in lossy_blocks)
        sym = max(
            max(np.max(np.abs(s[:, 1, 0] - s[:, 2, 0])), np.max(np.abs(s[:, 1, 1] - s[:, 2, 2])))
            for s in everything
        )
    ok = recip <= 1e-10 and unit <= 1e-9 and sv <= 1 + 1e-9 and sym <= 1e-12 and t.elapsed < 5.0
    criterion(
        4,
        "physics invariants",
        ok,
        f"reciprocity {recip:.1e}, unitarity {unit:.1e}, max sigma {sv:.12f}, symmetry {sym:.1e}, {t.elapsed:.2f} s",
    )


def test_05_bandwidth(criterion):
    # measured on the 401-point 14-42 GHz sweep used throughout
    design = synthesize_divider(DividerSpec(F0, rogers3003().lossless()))
    with Timer() as t:
        rep = report(assemble_divider_s(design, make_frequency_grid(14e9, 42e9, 401)), F0, -10.0)
    fbw = rep.fractional_bandwidth_pct
    ok = abs(fbw - 43.0) <= 5.0 and t.elapsed < 5.0
    extra = " (band clipped by sweep limits)" if rep.band_clipped else ""
    criterion(
        5,
        "bandwidth property",
        ok,
        f"FBW = {fbw:.2f}% over {rep.band_lo / 1e9:.3f}-{rep.band_hi / 1e9:.3f} GHz{extra}, target 43 +- 5",
    )


def test_06_insertion_loss(criterion):
    design = synthesize_divider(DividerSpec(F0, rogers3003()))
    with Timer() as t:
        rep = report(assemble_divider_s(design, make_frequency_grid(24e9, 32e9, 401)), F0)
    il = rep.insertion_loss_db
    criterion(6, "insertion-loss bracket", 3.02 <= il <= 3.3 and t.elapsed < 1.0, f"IL = {il:.4f} dB in [3.02, 3.3]")


def test_07_synthesis_round_trip(criterion):
    rng = np.random.default_rng(20241)
    worst, done = 0.0, 0
    with Timer() as t:
        while done < 500:
            sub = Substrate(rel_permittivity=rng.uniform(1.0, 10.0), height=rng.uniform(0.1e-3, 3e-3))
            z = rng.uniform(25.0, 120.0)
            w = synthesize_width(sub, z)
            worst = max(worst, abs(analyze_line(sub, w).char_impedance - z))
            done += 1
    ok = worst <= 0.01 and t.elapsed < 5.0
    criterion(7, "synthesis round-trip", ok, f"{done} cases, worst |dZ| = {worst:.2e} ohm, {t.elapsed:.2f} s")


def _random_block(rng, ports, n=40):
    s = rng.normal(size=(n, ports, ports)) + 1j * rng.normal(size=(n, ports, ports))
    for k in range(n):
        s[k] *= rng.uniform(0.01, 0.999) / np.linalg.norm(s[k], 2)
    return SParamBlock(np.sort(rng.uniform(1e9, 60e9, n)), s)


def test_08_touchstone_round_trip(criterion):
    rng = np.random.default_rng(8)
    worst = 0.0
    with Timer() as t:
        for _ in range(10):
            for ports in (2, 3):
                block = _random_block(rng, ports)
                for fmt in ("MA", "RI", "DB"):
                    back = parse_touchstone(write_touchstone(block, fmt))
                    rel = np.abs(back.s - block.s) / np.abs(block.s)
                    worst = max(worst, float(np.max(rel)), float(np.max(np.abs(back.freqs / block.freqs - 1))))
    ok = worst <= 1e-9 and t.elapsed < 5.0
    criterion(8, "touchstone round-trip", ok, f"60 blocks x 3 formats, worst relative error {worst:.1e}, {t.elapsed:.2f} s")


def test_09_optimizer_recovery(criterion):
    design = synthesize_divider(DividerSpec(F0, rogers3003().lossless()))
    L = design.transformer_a.length
    problem = OptimizationProblem(
        base=design.with_transformer(length=1.1 * L),
        band=[F0],
        variables=("transformer_length",),
        bounds={"transformer_length": (0.5 * L, 1.5 * L)},
    )
    with Timer() as t:
        result = optimize(problem)
    got = result.design.transformer_a.length
    rel = abs(got - L) / L
    best = [e.best_objective for e in result.trace]
    monotone = all(b <= a for a, b in zip(best, best[1:]))
    ok = rel <= 0.005 and result.evaluations <= 200 and monotone and t.elapsed < 10.0
    criterion(
        9,
        "optimizer recovery",
        ok,
        f"length error {rel:.1e} in {result.evaluations} evaluations, monotone trace = {monotone}, {t.elapsed:.2f} s",
    )


def test_10_comparison_row(criterion, tmp_path, capsys):
    geo, s3p = tmp_path / "paper.json", tmp_path / "paper.s3p"
    with Timer() as t:
        codes = [
            main(["paper-design", "-o", str(geo)]),
            main(["analyze", str(geo), "--fstart", "14GHz", "--fstop", "42GHz", "-o", str(s3p)]),
        ]
        capsys.readouterr()
        codes.append(main(["metrics", str(s3p), "--f0", "27.9GHz", "--design", str(geo), "--json"]))
        row = json.loads(capsys.readouterr().out)["comparison_row"]
    fields = (row["ports"], row["structure"], row["material"], row["size"])
    ok = codes == [0, 0, 0] and fields == (3, "T-junction", "Roger 3003", "50x80") and bool(row["note"]) and t.elapsed < 5.0
    criterion(10, "comparison row", ok, f"ports={fields[0]}, structure={fields[1]!r}, material={fields[2]!r}, size={fields[3]!r}")
