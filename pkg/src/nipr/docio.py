"""System documents: a JSON description of a transfer matrix or realization."""

from __future__ import annotations

import json

import numpy as np

from .poly import RationalScalar
from .ratmat import RationalMatrix
from .realization import StateSpace


def jsonable(x):
    """Recursively convert numpy/complex values into JSON-safe structures."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.complexfloating, complex)):
        if x.imag == 0:
            return float(x.real)
        return {"re": float(x.real), "im": float(x.imag)}
    return x


def document_of(obj, name="system", meta=None) -> dict:
    """Build a SystemDocument dict from a RationalMatrix or StateSpace."""
    doc = {"name": name, "meta": dict(meta or {})}
    if isinstance(obj, RationalMatrix):
        doc["domain"] = obj.domain
        doc["form"] = "tfm"
        doc["entries"] = [
            [{"num": [float(c) for c in e.num], "den": [float(c) for c in e.den]} for e in row]
            for row in obj.entries
        ]
    elif isinstance(obj, StateSpace):
        doc["domain"] = obj.domain
        doc["form"] = "ss"
        doc["A"] = obj.A.tolist()
        doc["B"] = obj.B.tolist()
        doc["C"] = obj.C.tolist()
        doc["D"] = obj.D.tolist()
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")
    return doc


def parse_document(doc: dict):
    """Turn a SystemDocument dict into a RationalMatrix or StateSpace."""
    domain = doc.get("domain")
    if domain not in ("ct", "dt"):
        raise ValueError(f"document domain must be 'ct' or 'dt', got {domain!r}")
    form = doc.get("form")
    if form == "tfm":
        entries = doc["entries"]
        return RationalMatrix(
            [[RationalScalar(cell["num"], cell["den"]) for cell in row] for row in entries],
            domain,
        )
    if form == "ss":
        return StateSpace(np.array(doc["A"], dtype=float, ndmin=2) if doc["A"] else np.zeros((0, 0)),
                          np.array(doc["B"], dtype=float),
                          np.array(doc["C"], dtype=float),
                          np.array(doc["D"], dtype=float, ndmin=2),
                          domain)
    raise ValueError(f"document form must be 'tfm' or 'ss', got {form!r}")


def save_document(doc: dict, path):
    with open(path, "w") as fh:
        json.dump(jsonable(doc), fh, indent=2)
        fh.write("\n")


def load_document(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
