"""Touchstone v1 reader/writer for 2- and 3-port S-parameter data."""

from __future__ import annotations

import math

import numpy as np

from .errors import ParseError, ValidationError
from .metrics import DB_FLOOR
from .netcalc import SParamBlock

FREQ_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
FORMATS = ("MA", "RI", "DB")
_UNIT_NAMES = {"HZ": "Hz", "KHZ": "kHz", "MHZ": "MHz", "GHZ": "GHz"}


def _num(x: float) -> str:
    # repr is the shortest string that round-trips exactly
    return repr(float(x))


def _pair(z: complex, fmt: str) -> tuple[str, str]:
    if fmt == "RI":
        return _num(z.real), _num(z.imag)
    mag = abs(z)
    ang = math.degrees(math.atan2(z.imag, z.real)) if mag else 0.0
    if fmt == "MA":
        return _num(mag), _num(ang)
    db = 20.0 * math.log10(mag) if mag > 0 else DB_FLOOR
    return _num(max(db, DB_FLOOR)), _num(ang)


def _ordered_entries(matrix: np.ndarray):
    n = matrix.shape[0]
    if n == 2:
        # v1 two-port order is S11 S21 S12 S22 on a single line
        return [[matrix[0, 0], matrix[1, 0], matrix[0, 1], matrix[1, 1]]]
    return [list(matrix[i]) for i in range(n)]


def write_touchstone(block: SParamBlock, fmt: str = "MA", freq_unit: str = "GHz", comments=()) -> str:
    fmt = fmt.upper()
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}, got {fmt!r}")
    unit = freq_unit.upper()
    if unit not in FREQ_UNITS:
        raise ValidationError(f"unknown frequency unit {freq_unit!r}")
    if block.ports not in (2, 3):
        raise ValidationError(f"only 2- and 3-port data supported, got {block.ports}")
    scale = FREQ_UNITS[unit]
    lines = [f"! {c}" for c in comments]
    lines.append(f"# {_UNIT_NAMES[unit]} S {fmt} R {_num(block.ref_impedance).removesuffix('.0')}")
    for f, m in zip(block.freqs, block.s):
        for r, row in enumerate(_ordered_entries(m)):
            fields = [_num(f / scale)] if r == 0 else []
            for z in row:
                fields.extend(_pair(complex(z), fmt))
            lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def _parse_option_line(tokens, lineno):
    unit, fmt, zref = "GHZ", "MA", 50.0
    it = iter(t.upper() for t in tokens)
    for tok in it:
        if tok in FREQ_UNITS:
            unit = tok
        elif tok in FORMATS:
            fmt = tok
        elif tok == "S":
            pass
        elif tok in ("Y", "Z", "G", "H"):
            raise ParseError(lineno, f"parameter type {tok} not supported (only S)")
        elif tok == "R":
            val = next(it, None)
            try:
                zref = float(val)
            except (TypeError, ValueError):
                raise ParseError(lineno, f"bad reference resistance {val!r}") from None
            if not (math.isfinite(zref) and zref > 0):
                raise ParseError(lineno, f"reference resistance must be positive, got {val}")
        else:
            raise ParseError(lineno, f"unrecognised option {tok!r}")
    return unit, fmt, zref


def parse_touchstone(text: str, ports: int | None = None) -> SParamBlock:
    """Parse Touchstone v1 text into an :class:`SParamBlock`.

    ``ports`` may be given (e.g. from a .s2p/.s3p extension); otherwise it is
    inferred from the value count on the first data line. Every failure is a
    :class:`ParseError` carrying the 1-based line number.
    """
    if not isinstance(text, str):
        raise ParseError(None, "input is not text")
    if ports is not None and ports not in (2, 3):
        raise ParseError(None, f"only 2- and 3-port data supported, got {ports}")
    option = None
    records = []  # (lineno, [floats])
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            if option is None:
                option = _parse_option_line(line[1:].split(), lineno)
            continue
        if line.startswith("["):
            raise ParseError(lineno, "Touchstone v2 keywords are not supported")
        values = []
        for tok in line.split():
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(lineno, f"non-numeric token {tok!r}") from None
            if not math.isfinite(v):
                raise ParseError(lineno, f"non-finite value {tok!r}")
            values.append(v)
        # an odd count starts a new frequency record, an even count continues one
        if len(values) % 2 == 1 or not records:
            records.append((lineno, values))
        else:
            records[-1][1].extend(values)

    unit, fmt, zref = option or ("GHZ", "MA", 50.0)
    if not records:
        raise ParseError(None, "no data lines")
    if ports is None:
        first = len(records[0][1])
        ports = {9: 2, 7: 3, 19: 3}.get(first)
        if ports is None:
            raise ParseError(records[0][0], f"cannot infer port count from {first} values on first data line")
    n_expected = 1 + 2 * ports * ports
    scale = FREQ_UNITS[unit]

    freqs = np.empty(len(records))
    s = np.empty((len(records), ports, ports), dtype=complex)
    prev = -math.inf
    for k, (lineno, values) in enumerate(records):
        if len(values) != n_expected:
            raise ParseError(lineno, f"expected {n_expected} values for a {ports}-port frequency point, got {len(values)}")
        f = values[0] * scale
        if not (math.isfinite(f) and f > 0):
            raise ParseError(lineno, f"frequency must be positive, got {values[0]}")
        if f <= prev:
            raise ParseError(lineno, "non-increasing frequency")
        prev = f
        a = np.array(values[1::2])
        b = np.array(values[2::2])
        if fmt == "RI":
            z = a + 1j * b
        else:
            with np.errstate(over="ignore", invalid="ignore"):
                mag = a if fmt == "MA" else 10.0 ** (a / 20.0)
                z = mag * np.exp(1j * np.deg2rad(b))
        if not np.all(np.isfinite(z)):
            raise ParseError(lineno, "non-finite parameter value")
        if ports == 2:
            m = np.array([[z[0], z[2]], [z[1], z[3]]])
        else:
            m = z.reshape(ports, ports)
        freqs[k] = f
        s[k] = m
    return SParamBlock(freqs, s, zref)


def read_touchstone(path) -> SParamBlock:
    path = str(path)
    ports = None
    ext = path.rsplit(".", 1)[-1].lower()
    if ext in ("s2p", "s3p"):
        ports = int(ext[1])
    with open(path) as fh:
        return parse_touchstone(fh.read(), ports)
