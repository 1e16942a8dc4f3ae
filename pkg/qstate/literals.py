"""
Text formats for complex numbers and state files.

Complex literal: "a", "bi", "a+bi" or "a-bi" with a, b decimal/scientific
reals ("i" alone means 1i). State file: a header line holding the dimension,
optionally followed by the word "pure", then either dim rows of dim entries
(density matrix) or one row of dim amplitudes (pure state). Blank lines and
lines starting with "#" are ignored. See docs/formats.md.
"""

import re
from pathlib import Path

import numpy as np

from pac_lab.exceptions import InvalidState

from .states import DensityMatrix, PureState

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_REAL})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<re_only>{_REAL})"
    rf"|(?P<im_only>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)$"
)


def _imag_part(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex_literal(text: str) -> complex:
    token = text.strip().replace(" ", "")
    match = _COMPLEX_RE.match(token)
    if not match:
        raise InvalidState(f"Not a complex literal: {text!r}")
    try:
        if match.group("re_only") is not None:
            return complex(float(match.group("re_only")), 0.0)
        if match.group("re") is not None:
            return complex(float(match.group("re")), _imag_part(match.group("im")))
        return complex(0.0, _imag_part(match.group("im_only")))
    except ValueError as exc:
        raise InvalidState(f"Not a complex literal: {text!r}") from exc


def format_complex_literal(value: complex, precision: int = 12) -> str:
    value = complex(value)
    real = f"{value.real:.{precision}g}"
    imag = abs(value.imag)
    if imag == 0.0:
        return real
    sign = "-" if value.imag < 0 else "+"
    return f"{real}{sign}{imag:.{precision}g}i"


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def parse_state_text(text: str):
    """Return a DensityMatrix (or PureState when the header says 'pure')."""
    lines = _content_lines(text)
    if not lines:
        raise InvalidState("State file is empty")
    header = lines[0].split()
    try:
        dim = int(header[0])
    except ValueError as exc:
        raise InvalidState(f"State file header must start with the dimension, got {lines[0]!r}") from exc
    if dim < 1:
        raise InvalidState(f"Dimension must be positive, got {dim}")
    pure = len(header) > 1 and header[1].lower() == "pure"
    rows = [[parse_complex_literal(tok) for tok in line.replace(",", " ").split()] for line in lines[1:]]

    if pure:
        if len(rows) != 1 or len(rows[0]) != dim:
            raise InvalidState(f"Pure state file needs one row of {dim} amplitudes")
        return PureState(np.array(rows[0], dtype=complex))
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise InvalidState(f"Density matrix file needs {dim} rows of {dim} entries")
    return DensityMatrix(np.array(rows, dtype=complex))


def load_density_matrix(path) -> DensityMatrix:
    state = parse_state_text(Path(path).read_text())
    return state.density() if isinstance(state, PureState) else state


def format_state_text(state) -> str:
    if isinstance(state, PureState):
        body = " ".join(format_complex_literal(a) for a in state.amplitudes)
        return f"{state.dim} pure\n{body}\n"
    rows = [" ".join(format_complex_literal(v) for v in row) for row in state.matrix]
    return "\n".join([str(state.dim)] + rows) + "\n"


def write_state(path, state) -> None:
    Path(path).write_text(format_state_text(state))
