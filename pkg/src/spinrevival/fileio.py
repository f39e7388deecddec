"""JSON and CSV formats read and written by the command-line tool.

Schemas are plain JSON-Schema dicts so callers can validate with any
validator; the loaders here do their own structural checks and raise
:class:`FormatError` on anything malformed.
"""

from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np

from .chain import JacobiMatrix, SpectralData

_NUM_ARRAY = {"type": "array", "items": {"type": "number"}}

CHAIN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "JacobiMatrix",
    "type": "object",
    "required": ["n", "couplings", "fields"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "couplings": _NUM_ARRAY,
        "fields": {**_NUM_ARRAY, "minItems": 1},
    },
}

SPECTRAL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SpectralData",
    "type": "object",
    "required": ["points", "weights"],
    "properties": {
        "points": {**_NUM_ARRAY, "minItems": 1},
        "weights": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
    },
}

RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DesignRecord",
    "type": "object",
    "required": ["n", "theta", "psi", "T", "phi", "delta", "sigma", "tau"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "theta": {"type": "number"},
        "psi": {"type": "number"},
        "T": {"type": "number", "exclusiveMinimum": 0},
        "phi": {"type": "number"},
        "delta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 2},
        "sigma": {"type": "number"},
        "tau": {"type": "number"},
    },
}

DESIGN_FILE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DesignFile",
    "type": "object",
    "required": ["chain", "record"],
    "properties": {"chain": CHAIN_SCHEMA, "record": RECORD_SCHEMA},
}

_REVIVAL = {
    "type": ["object", "null"],
    "required": ["theta", "psi", "phi", "leak"],
    "properties": {k: {"type": "number"} for k in ("theta", "psi", "phi", "leak")},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "VerifyReport",
    "type": "object",
    "required": ["n", "T", "persymmetric", "pst", "pst_fidelity", "revival", "leak", "bilattice"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "T": {"type": "number"},
        "persymmetric": {"type": "boolean"},
        "pst": {"type": "boolean"},
        "pst_fidelity": {"type": "number"},
        "revival": _REVIVAL,
        "leak": {"type": "number"},
        "bilattice": {
            "type": "object",
            "required": ["offset", "delta", "residual"],
            "properties": {k: {"type": "number"} for k in ("offset", "delta", "residual")},
        },
        "target_residual": {"type": "number"},
    },
}

CSV_HEADER = ("t", "site", "re", "im", "prob")


class FormatError(ValueError):
    """Input file is unreadable or does not have the expected structure."""


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def chain_from_obj(obj) -> JacobiMatrix:
    """Accept a bare chain object or any object holding one under ``"chain"``."""
    if isinstance(obj, dict) and "chain" in obj:
        obj = obj["chain"]
    if not isinstance(obj, dict):
        raise FormatError("chain JSON must be an object")
    try:
        return JacobiMatrix.from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed chain: {exc}") from exc


def spectral_from_obj(obj) -> SpectralData:
    if isinstance(obj, dict) and "spectral_data" in obj:
        obj = obj["spectral_data"]
    if not isinstance(obj, dict):
        raise FormatError("spectral JSON must be an object")
    try:
        return SpectralData.from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed spectral data: {exc}") from exc


def load_chain(path) -> JacobiMatrix:
    return chain_from_obj(read_json(path))


def load_spectral(path) -> SpectralData:
    return spectral_from_obj(read_json(path))


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def amplitudes_csv(times, amplitudes) -> str:
    """One row per ``(t, site)`` with 17 significant digits."""
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for t, row in zip(np.asarray(times, dtype=float), np.asarray(amplitudes)):
        for site, a in enumerate(row):
            buf.write(f"{_g17(t)},{site},{_g17(a.real)},{_g17(a.imag)},{_g17(abs(a) ** 2)}\n")
    return buf.getvalue()


def read_amplitudes_csv(text: str):
    """Inverse of :func:`amplitudes_csv`: ``(times, complex array (n_t, n_sites))``."""
    lines = text.strip().splitlines()
    if not lines or tuple(lines[0].split(",")) != CSV_HEADER:
        raise FormatError("unexpected CSV header")
    rows = [line.split(",") for line in lines[1:]]
    times = list(dict.fromkeys(float(r[0]) for r in rows))
    n_sites = max(int(r[1]) for r in rows) + 1
    out = np.zeros((len(times), n_sites), dtype=complex)
    index = {t: i for i, t in enumerate(times)}
    for r in rows:
        out[index[float(r[0])], int(r[1])] = complex(float(r[2]), float(r[3]))
    return np.array(times), out
