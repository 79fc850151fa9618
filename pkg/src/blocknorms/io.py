"""JSON wire formats for matrices and block matrices.

Matrix::

    {"rows": r, "cols": c, "entries": [[re, im], ...]}   # row-major

Block matrix::

    {"n": n, "m": m, "A": <matrix>, "X": <matrix>, "B": <matrix>}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import PsdBlockMatrix, assemble


class FormatError(ValueError):
    """Input document does not follow the wire format; names the bad field."""


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2:
        raise ValueError("only 2-D matrices can be serialized")
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in M.ravel()],
    }


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise FormatError(f"{where}.{key}: missing")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    for key, val in (("rows", rows), ("cols", cols)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise FormatError(f"{where}.{key}: expected a positive integer, got {val!r}")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise FormatError(f"{where}.entries: expected {rows * cols} [re, im] pairs")
    out = np.empty(rows * cols, dtype=np.complex128)
    for idx, pair in enumerate(entries):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise FormatError(f"{where}.entries[{idx}]: expected [re, im]")
        out[idx] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise FormatError(f"{where}.entries: non-finite value")
    return out.reshape(rows, cols)


def block_to_json(M: PsdBlockMatrix) -> dict:
    return {
        "n": M.n,
        "m": M.m,
        "A": matrix_to_json(M.A),
        "X": matrix_to_json(M.X),
        "B": matrix_to_json(M.B),
    }


def block_from_json(obj) -> PsdBlockMatrix:
    if not isinstance(obj, dict):
        raise FormatError("block: expected an object")
    for key in ("n", "m", "A", "X", "B"):
        if key not in obj:
            raise FormatError(f"block.{key}: missing")
    n, m = obj["n"], obj["m"]
    A = matrix_from_json(obj["A"], "block.A")
    X = matrix_from_json(obj["X"], "block.X")
    B = matrix_from_json(obj["B"], "block.B")
    if A.shape != (n, n):
        raise FormatError(f"block.A: shape {A.shape} does not match n={n}")
    if B.shape != (m, m):
        raise FormatError(f"block.B: shape {B.shape} does not match m={m}")
    if X.shape != (n, m):
        raise FormatError(f"block.X: shape {X.shape} does not match (n, m)=({n}, {m})")
    try:
        return assemble(A, X, B)
    except ValueError as exc:
        raise FormatError(f"block: {exc}") from exc


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_block(path) -> PsdBlockMatrix:
    return block_from_json(load_json(path))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(load_json(path))


def dump(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
