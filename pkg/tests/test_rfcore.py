import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmdivider.errors import InvalidCount, InvalidRange, InvalidSubstrate
from mmdivider.rfcore import FrequencyGrid, Substrate, make_frequency_grid, rogers3003, validate_substrate

GOOD = dict(rel_permittivity=3.0, height=1.6e-3, loss_tangent=0.0013, metal_thickness=17e-6, metal_conductivity=5.8e7)


class TestSubstrate:
    def test_accepts_reference_stackup(self):
        sub = validate_substrate(GOOD)
        assert sub == Substrate(**GOOD)
        assert sub.height == 1.6e-3

    def test_rejects_sub_unity_permittivity(self):
        with pytest.raises(InvalidSubstrate) as exc:
            validate_substrate({**GOOD, "rel_permittivity": 0.5})
        assert exc.value.fields == ["rel_permittivity"]

    def test_rejects_metal_thicker_than_dielectric(self):
        with pytest.raises(InvalidSubstrate) as exc:
            validate_substrate({**GOOD, "metal_thickness": 2.0e-3})
        assert exc.value.fields == ["metal_thickness"]

    def test_reports_every_violation(self):
        with pytest.raises(InvalidSubstrate) as exc:
            validate_substrate(
                dict(rel_permittivity=0.2, height=-1.0, loss_tangent=-0.1, metal_thickness=0.0, metal_conductivity=0.0)
            )
        assert set(exc.value.fields) == {
            "rel_permittivity",
            "height",
            "loss_tangent",
            "metal_thickness",
            "metal_conductivity",
        }

    def test_nan_rejected(self):
        with pytest.raises(InvalidSubstrate):
            Substrate(rel_permittivity=float("nan"), height=1e-3)

    def test_immutable(self, roger):
        with pytest.raises(AttributeError):
            roger.height = 1.0

    def test_lossless_sentinel(self, roger):
        lossless = roger.lossless()
        assert lossless.is_lossless and not roger.is_lossless
        assert math.isinf(lossless.metal_conductivity)

    def test_dict_round_trip_including_perfect_conductor(self, roger):
        for sub in (roger, roger.lossless()):
            assert Substrate.from_dict(sub.to_dict()) == sub

    def test_missing_field(self):
        with pytest.raises(InvalidSubstrate) as exc:
            validate_substrate({"rel_permittivity": 3.0})
        assert "height" in exc.value.fields

    def test_rogers_helper(self):
        assert rogers3003().material == "Roger 3003"


class TestFrequencyGrid:
    def test_five_points(self):
        g = make_frequency_grid(20e9, 36e9, 5)
        assert list(g) == [20e9, 24e9, 28e9, 32e9, 36e9]

    def test_degenerate_range(self):
        with pytest.raises(InvalidRange):
            make_frequency_grid(28e9, 28e9, 2)

    @pytest.mark.parametrize("start,stop", [(-1.0, 1e9), (0.0, 1e9), (2e9, 1e9)])
    def test_bad_ranges(self, start, stop):
        with pytest.raises(InvalidRange):
            make_frequency_grid(start, stop, 3)

    @pytest.mark.parametrize("points", [0, 1, 2.5])
    def test_bad_counts(self, points):
        with pytest.raises(InvalidCount):
            make_frequency_grid(1e9, 2e9, points)

    def test_20mhz_grid_contains_28ghz(self):
        g = make_frequency_grid(24e9, 32e9, 401)
        assert g.step == pytest.approx(20e6)
        assert g.values[200] == 28e9

    def test_equality_is_componentwise(self):
        assert FrequencyGrid(1e9, 2e9, 3) == FrequencyGrid(1e9, 2e9, 3)
        assert FrequencyGrid(1e9, 2e9, 3) != FrequencyGrid(1e9, 2e9, 4)

    def test_values_read_only(self):
        g = make_frequency_grid(1e9, 2e9, 3)
        with pytest.raises(ValueError):
            g.values[0] = 5.0

    @given(
        st.floats(1e3, 1e11),
        st.floats(1e-6, 10.0),
        st.integers(2, 2000),
    )
    def test_values_formula(self, a, span, n):
        b = a * (1 + span)
        g = make_frequency_grid(a, b, n)
        vals = g.values
        assert vals[0] == a and vals[-1] == b
        for k in range(n - 1):
            assert vals[k] == a + k * (b - a) / (n - 1)
        assert all(x < y for x, y in zip(vals[:-1], vals[1:]))
