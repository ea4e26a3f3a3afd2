import pytest

from mmdivider.errors import ValidationError
from mmdivider.units import parse_quantity


@pytest.mark.parametrize(
    "text,kind,expected",
    [
        ("28GHz", "frequency", 28e9),
        ("28e9", "frequency", 28e9),
        ("28 GHz", "frequency", 28e9),
        ("28G", "frequency", 28e9),
        ("500MHz", "frequency", 500e6),
        ("1.6mm", "length", 1.6e-3),
        ("17um", "length", 17e-6),
        ("0.0016", "length", 1.6e-3),
        ("10mil", "length", 254e-6),
        ("-10", None, -10.0),
    ],
)
def test_parse(text, kind, expected):
    assert parse_quantity(text, kind) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("text", ["abc", "28 parsecs", "", "1.2.3"])
def test_rejects(text):
    with pytest.raises(ValidationError):
        parse_quantity(text, "frequency")
