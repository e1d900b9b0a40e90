"""JSON encodings for matrices, tensor elements and nuclear representations.

Complex scalars are written as ``[re, im]`` pairs.  Python's float ``repr``
is the shortest string that round-trips, so doubles survive a write/read
cycle bit for bit.

Matrix::

    {"rows": n, "cols": m, "data": [[re, im], ...]}        # row-major

TensorElement::

    {"dim_x": n, "dim_y": m, "riesz": false,
     "pairs": [{"x": [[re, im], ...], "y": [[re, im], ...]}, ...]}

NuclearRep::

    {"dim": n, "terms": [{"z": [...], "y": [...]}, ...]}
"""

import json
import math

import numpy as np

from .errors import FormatError
from .tensor import NuclearRep, TensorElement

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "tensor_to_json",
    "tensor_from_json",
    "rep_to_json",
    "rep_from_json",
    "dumps",
    "load_json_file",
]


def _encode_vector(v):
    return [[float(c.real), float(c.imag)] for c in np.asarray(v, dtype=np.complex128).ravel()]


def _decode_scalar(item, field):
    if isinstance(item, bool) or not isinstance(item, (list, tuple)) or len(item) != 2:
        raise FormatError(f"{field}: expected a [re, im] pair, got {item!r}", field)
    out = []
    for part in item:
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise FormatError(f"{field}: non-numeric component {part!r}", field)
        if not math.isfinite(part):
            raise FormatError(f"{field}: non-finite component {part!r}", field)
        out.append(float(part))
    return complex(out[0], out[1])


def _decode_vector(items, dim, field):
    if not isinstance(items, list):
        raise FormatError(f"{field}: expected a list of [re, im] pairs", field)
    if len(items) != dim:
        raise FormatError(f"{field}: expected {dim} entries, got {len(items)}", field)
    return np.array([_decode_scalar(it, f"{field}[{i}]") for i, it in enumerate(items)], dtype=np.complex128)


def _positive_int(doc, key):
    if key not in doc:
        raise FormatError(f"missing field {key!r}", key)
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int) or val < 1:
        raise FormatError(f"{key}: expected a positive integer, got {val!r}", key)
    return val


def _require_object(doc, what):
    if not isinstance(doc, dict):
        raise FormatError(f"{what} document must be a JSON object", None)


def matrix_to_json(a):
    a = np.asarray(a, dtype=np.complex128)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": _encode_vector(a)}


def matrix_from_json(doc):
    _require_object(doc, "matrix")
    rows = _positive_int(doc, "rows")
    cols = _positive_int(doc, "cols")
    if "data" not in doc:
        raise FormatError("missing field 'data'", "data")
    flat = _decode_vector(doc["data"], rows * cols, "data")
    return flat.reshape(rows, cols)


def tensor_to_json(f):
    return {
        "dim_x": f.dim_x,
        "dim_y": f.dim_y,
        "riesz": bool(f.riesz),
        "pairs": [{"x": _encode_vector(x), "y": _encode_vector(y)} for x, y in f.pairs],
    }


def tensor_from_json(doc):
    _require_object(doc, "tensor")
    dx = _positive_int(doc, "dim_x")
    dy = _positive_int(doc, "dim_y")
    riesz = doc.get("riesz", False)
    if not isinstance(riesz, bool):
        raise FormatError("riesz: expected a boolean", "riesz")
    pairs = doc.get("pairs")
    if not isinstance(pairs, list):
        raise FormatError("pairs: expected a list", "pairs")
    xs, ys = [], []
    for i, p in enumerate(pairs):
        if not isinstance(p, dict) or "x" not in p or "y" not in p:
            raise FormatError(f"pairs[{i}]: expected an object with 'x' and 'y'", f"pairs[{i}]")
        xs.append(_decode_vector(p["x"], dx, f"pairs[{i}].x"))
        ys.append(_decode_vector(p["y"], dy, f"pairs[{i}].y"))
    return TensorElement(dx, dy, xs, ys, riesz=riesz)


def rep_to_json(rep):
    return {
        "dim": rep.dim,
        "terms": [{"z": _encode_vector(z), "y": _encode_vector(y)} for z, y in rep.terms],
    }


def rep_from_json(doc):
    _require_object(doc, "nuclear representation")
    dim = _positive_int(doc, "dim")
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise FormatError("terms: expected a list", "terms")
    zs, ys = [], []
    for i, t in enumerate(terms):
        if not isinstance(t, dict) or "z" not in t or "y" not in t:
            raise FormatError(f"terms[{i}]: expected an object with 'z' and 'y'", f"terms[{i}]")
        zs.append(_decode_vector(t["z"], dim, f"terms[{i}].z"))
        ys.append(_decode_vector(t["y"], dim, f"terms[{i}].y"))
    return NuclearRep(dim, zs, ys)


def dumps(doc, indent=None):
    return json.dumps(doc, indent=indent, allow_nan=False)


def load_json_file(path):
    """Parse a JSON file, turning syntax errors into :class:`FormatError`."""
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", None) from exc
