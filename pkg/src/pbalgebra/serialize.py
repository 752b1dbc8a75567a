"""Canonical JSON encoding shared by the CLI.

Matrices encode as {"dim": n, "data": [[re, im], ...]} in row-major order.
Floats use Python's shortest round-trip repr, keys are sorted, so decoding and
re-encoding reproduces the same bytes.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import ShapeError
from .linalg import as_cmatrix


def encode_matrix(x) -> dict:
    m = as_cmatrix(x)
    flat = m.reshape(-1)
    return {"dim": int(m.shape[0]), "data": [[float(z.real), float(z.imag)] for z in flat]}


def decode_matrix(obj: dict) -> np.ndarray:
    n = int(obj["dim"])
    data = obj["data"]
    if len(data) != n * n:
        raise ShapeError(f"expected {n * n} entries for dim {n}, got {len(data)}")
    flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    return as_cmatrix(flat.reshape(n, n))


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False,
                      allow_nan=False, default=_default) + "\n"
