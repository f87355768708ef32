"""Reading and writing matrix and vector files.

Two encodings are supported.

``text``::

    matrix <rows> <cols>
    a11 a12 ...
    ...

    vector <len>
    v1 v2 ...

``structured`` (JSON)::

    {"n": 2, "matrix": [[...], ...]}
    {"v": [...]}

Readers detect the encoding from the first non-blank character. Numbers are
written with 17 significant digits so they round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

__all__ = [
    "FileFormatError",
    "format_number",
    "format_vector",
    "parse_matrix",
    "parse_vector",
    "dump_matrix",
    "dump_vector",
    "read_matrix",
    "read_vector",
    "write_matrix",
    "write_vector",
    "parse_values",
]


class FileFormatError(ValueError):
    """Malformed matrix or vector file."""


def format_number(v):
    return f"{float(v):.17g}"


def format_vector(v):
    return " ".join(format_number(a) for a in np.asarray(v).reshape(-1))


def _floats(tokens):
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise FileFormatError(f"not a number: {exc}") from None


def _check_finite(arr):
    if not np.all(np.isfinite(arr)):
        raise FileFormatError("non-finite entries")
    return arr


def parse_matrix(text):
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            data = np.array(obj["matrix"], dtype=float)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"bad structured matrix: {exc}") from None
        if data.ndim != 2:
            raise FileFormatError("matrix must be a rectangular 2-D array")
        if "n" in obj and data.shape != (2 * int(obj["n"]), 2 * int(obj["n"])):
            raise FileFormatError(f"declared n={obj['n']} does not match shape {data.shape}")
        return _check_finite(data)
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "matrix" or len(lines[0]) != 3:
        raise FileFormatError("expected header 'matrix <rows> <cols>'")
    try:
        rows, cols = int(lines[0][1]), int(lines[0][2])
    except ValueError:
        raise FileFormatError("matrix dimensions must be integers") from None
    values = _floats([t for ln in lines[1:] for t in ln])
    if rows < 1 or cols < 1 or len(values) != rows * cols:
        raise FileFormatError(f"expected {rows}x{cols} values, got {len(values)}")
    return _check_finite(np.array(values).reshape(rows, cols))


def parse_vector(text):
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            data = np.array(obj["v"], dtype=float)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"bad structured vector: {exc}") from None
        if data.ndim != 1 or data.size == 0:
            raise FileFormatError("vector must be a non-empty 1-D array")
        return _check_finite(data)
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "vector" or len(lines[0]) != 2:
        raise FileFormatError("expected header 'vector <len>'")
    try:
        size = int(lines[0][1])
    except ValueError:
        raise FileFormatError("vector length must be an integer") from None
    values = _floats([t for ln in lines[1:] for t in ln])
    if size < 1 or len(values) != size:
        raise FileFormatError(f"expected {size} values, got {len(values)}")
    return _check_finite(np.array(values))


def dump_matrix(A, fmt="text"):
    A = np.asarray(A, dtype=float)
    if fmt == "structured":
        obj = {"matrix": [[float(a) for a in row] for row in A]}
        if A.shape[0] == A.shape[1] and A.shape[0] % 2 == 0:
            obj = {"n": A.shape[0] // 2, **obj}
        return json.dumps(obj) + "\n"
    rows = [f"matrix {A.shape[0]} {A.shape[1]}"]
    rows += [format_vector(row) for row in A]
    return "\n".join(rows) + "\n"


def dump_vector(v, fmt="text"):
    v = np.asarray(v, dtype=float).reshape(-1)
    if fmt == "structured":
        return json.dumps({"v": [float(a) for a in v]}) + "\n"
    return f"vector {v.size}\n{format_vector(v)}\n"


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def read_vector(path):
    return parse_vector(Path(path).read_text())


def write_matrix(path, A, fmt="text"):
    Path(path).write_text(dump_matrix(A, fmt))


def write_vector(path, v, fmt="text"):
    Path(path).write_text(dump_vector(v, fmt))


def parse_values(source):
    """A vector from ``"a,b,c"`` or, if ``source`` names an existing file, from that file."""
    if Path(source).is_file():
        return read_vector(source)
    tokens = [t for t in source.replace(",", " ").split() if t]
    if not tokens:
        raise FileFormatError("empty value list")
    return _check_finite(np.array(_floats(tokens)))
