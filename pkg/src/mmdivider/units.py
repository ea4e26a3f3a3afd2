"""Parsing of numbers with SI / unit suffixes ("28GHz", "1.6mm", "17um", "10mil")."""

import re

from .errors import ValidationError

_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-zµ]*)\s*$")

_FREQ = {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12}
_LENGTH = {
    "": 1.0,
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
    "mil": 25.4e-6,
    "mils": 25.4e-6,
    "in": 25.4e-3,
}
_PREFIX = {"T": 1e12, "G": 1e9, "M": 1e6, "k": 1e3, "m": 1e-3, "u": 1e-6, "µ": 1e-6, "n": 1e-9, "p": 1e-12}
_KINDS = {"frequency": _FREQ, "length": _LENGTH}


def parse_quantity(text, kind=None) -> float:
    """Parse ``text`` into a float in SI base units.

    ``kind`` selects the unit table ("frequency" or "length"); with no kind
    only bare numbers and single-letter SI prefixes are accepted.
    """
    if isinstance(text, (int, float)):
        return float(text)
    m = _NUMBER.match(str(text))
    if not m:
        raise ValidationError(f"cannot parse quantity {text!r}")
    value, suffix = float(m.group(1)), m.group(2)
    if kind is not None:
        table = _KINDS[kind]
        if suffix.lower() in table and not (kind == "length" and suffix == "M"):
            return value * table[suffix.lower()]
    if suffix in _PREFIX:
        return value * _PREFIX[suffix]
    if suffix == "":
        return value
    raise ValidationError(f"unknown unit {suffix!r} in {text!r}")
