import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmdivider.divider import paper_reference_design
from mmdivider.errors import FrequencyOutOfRange, ValidationError
from mmdivider.metrics import ComparisonRow, band_edges, comparison_row, magnitude_db, report
from mmdivider.netcalc import SParamBlock, assemble_divider_s
from mmdivider.rfcore import make_frequency_grid

from oracles import quarter_wave_gamma, quarter_wave_fbw

F0 = 28e9


class TestMagnitudeDb:
    def test_unit(self):
        assert magnitude_db(1.0) == 0.0

    def test_half_power(self):
        assert magnitude_db(0.70711) == pytest.approx(-3.0103, abs=1e-4)

    def test_half_amplitude(self):
        assert magnitude_db(0.5) == pytest.approx(-6.0206, abs=1e-4)

    def test_zero_floor(self):
        assert magnitude_db(0.0) == -200.0

    def test_phase_ignored(self):
        assert magnitude_db(0.5j) == magnitude_db(-0.5)


def synthetic_block(s11_db, freqs, s21=1 / math.sqrt(2)):
    """Three-port block with a prescribed |S11| curve and fixed transmission."""
    n = len(freqs)
    s = np.zeros((n, 3, 3), dtype=complex)
    s[:, 0, 0] = 10 ** (np.asarray(s11_db) / 20)
    s[:, 1, 0] = s[:, 0, 1] = s21
    s[:, 2, 0] = s[:, 0, 2] = s21
    s[:, 1, 1] = s[:, 2, 2] = 0.5
    s[:, 1, 2] = s[:, 2, 1] = 0.5
    return SParamBlock(freqs, s)


class TestBandwidth:
    def test_interpolated_edges(self):
        freqs = np.array([20e9, 24e9, 28e9, 32e9, 36e9])
        db = np.array([-5.0, -15.0, -30.0, -20.0, -8.0])
        lo, hi, clipped, matched = band_edges(freqs, db, 28e9, -10.0)
        # -10 dB crossing: 20 + 4*(5/10) GHz, 32 + 4*(10/12) GHz
        assert lo == pytest.approx(22e9)
        assert hi == pytest.approx(32e9 + 4e9 * 10 / 12)
        assert not clipped and matched

    def test_clipped(self):
        freqs = np.linspace(20e9, 36e9, 5)
        lo, hi, clipped, _ = band_edges(freqs, np.full(5, -30.0), 28e9, -10.0)
        assert (lo, hi, clipped) == (20e9, 36e9, True)

    def test_unmatched_at_f0(self):
        freqs = np.linspace(20e9, 36e9, 5)
        rep = report(synthetic_block([-20, -20, -3, -20, -20], freqs), 28e9)
        assert rep.fractional_bandwidth_pct == 0.0 and not rep.matched_at_f0

    def test_lossless_design_follows_transformer_theory(self, lossless_design):
        # dense sweep of the circuit model against the TEM single-section result
        grid = make_frequency_grid(2e9, 54e9, 5201)
        rep = report(assemble_divider_s(lossless_design, grid), F0, -10.0)
        theory = quarter_wave_fbw(10 ** (-10 / 20), 50.0, 25.0) * 100
        assert not rep.band_clipped
        assert rep.fractional_bandwidth_pct == pytest.approx(theory, abs=0.1)

    def test_lossless_grid_edge_reflection(self, lossless_design):
        block = assemble_divider_s(lossless_design, [14e9, 42e9])
        for k, f in enumerate(block.freqs):
            theta = math.pi / 2 * f / F0
            assert abs(block.s[k, 0, 0]) == pytest.approx(quarter_wave_gamma(theta, 50.0, 25.0), abs=1e-5)

    @given(st.floats(-40.0, -1.0), st.floats(0.0, 20.0))
    def test_threshold_monotone(self, thr, delta):
        freqs = np.linspace(10e9, 46e9, 73)
        db = -30 + 25 * ((freqs - 28e9) / 18e9) ** 2
        block = synthetic_block(db, freqs)
        loose = report(block, F0, thr)
        strict = report(block, F0, thr - delta)
        assert strict.fractional_bandwidth_pct <= loose.fractional_bandwidth_pct + 1e-9


class TestReport:
    def test_ideal_design(self, lossless_design):
        rep = report(assemble_divider_s(lossless_design, make_frequency_grid(14e9, 42e9, 401)), F0)
        assert rep.insertion_loss_db == pytest.approx(3.0103, abs=1e-4)
        assert rep.return_loss_db <= -80.0
        assert rep.isolation_db == pytest.approx(-6.0206, abs=0.01)
        assert rep.output_match_db == pytest.approx(-6.0206, abs=0.01)
        assert rep.band_lo <= F0 <= rep.band_hi

    def test_lossy_insertion_loss(self, lossy_design):
        rep = report(assemble_divider_s(lossy_design, make_frequency_grid(24e9, 32e9, 401)), F0)
        assert 3.02 <= rep.insertion_loss_db <= 3.3

    def test_snaps_to_nearest_point(self, lossless_design):
        rep = report(assemble_divider_s(lossless_design, make_frequency_grid(20e9, 36e9, 5)), 28.9e9)
        assert rep.eval_freq == 28e9

    def test_out_of_range(self, lossless_design):
        block = assemble_divider_s(lossless_design, make_frequency_grid(20e9, 36e9, 5))
        with pytest.raises(FrequencyOutOfRange):
            report(block, 40e9)

    def test_positive_threshold_rejected(self, lossless_design):
        block = assemble_divider_s(lossless_design, make_frequency_grid(20e9, 36e9, 5))
        with pytest.raises(ValidationError):
            report(block, F0, 3.0)

    @given(st.floats(0.05, 1.0))
    def test_scaling(self, k):
        freqs = np.linspace(10e9, 46e9, 73)
        db = -30 + 25 * ((freqs - 28e9) / 18e9) ** 2
        block = synthetic_block(db, freqs)
        base = report(block, F0)
        scaled = report(block.scaled(k), F0)
        assert scaled.insertion_loss_db - base.insertion_loss_db == pytest.approx(-20 * math.log10(k), abs=1e-9)
        # transmission-only scaling leaves the S11-defined band alone
        s = np.array(block.s)
        s[:, 1:, 0] *= k
        s[:, 0, 1:] *= k
        tx = report(SParamBlock(freqs, s), F0)
        assert tx.fractional_bandwidth_pct == base.fractional_bandwidth_pct

    @given(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi))
    def test_passive_split_floor(self, r, phase):
        # any lossless symmetric split with |S11| = r: |S21|^2 = (1 - r^2)/2
        t = math.sqrt((1 - r * r) / 2)
        s = np.zeros((1, 3, 3), dtype=complex)
        s[0, 0, 0] = r * np.exp(1j * phase)
        s[0, 1, 0] = s[0, 2, 0] = t
        rep = report(SParamBlock([F0], s), F0)
        assert rep.insertion_loss_db >= 3.0103 - 1e-6 or t == 0


class TestComparisonRow:
    def test_paper_row(self):
        d = paper_reference_design()
        rep = report(assemble_divider_s(d, make_frequency_grid(14e9, 42e9, 401)), 27.9e9)
        row = comparison_row(d, rep)
        assert row.ports == 3
        assert row.structure == "T-junction"
        assert row.material == "Roger 3003"
        assert row.size == "50x80"
        assert row.frequency == "27.9"

    def test_json_round_trip(self, lossy_design):
        rep = report(assemble_divider_s(lossy_design, make_frequency_grid(14e9, 42e9, 41)), F0)
        row = comparison_row(lossy_design, rep)
        assert ComparisonRow.from_json(row.to_json()) == row

    def test_text_has_column_order(self, lossy_design):
        rep = report(assemble_divider_s(lossy_design, make_frequency_grid(14e9, 42e9, 41)), F0)
        header = comparison_row(lossy_design, rep).to_text().splitlines()[0]
        cols = ["Number of ports", "Frequency", "Fractional bandwidth", "Insertion loss", "Size (mm)", "Material", "Structure", "Reflection coefficient"]
        positions = [header.index(c) for c in cols]
        assert positions == sorted(positions)
