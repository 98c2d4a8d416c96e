"""JSON codecs for the domain objects.

Rationals travel as ``"p/q"`` strings, complex floats as ``repr`` strings
(``"(1+2j)"``), integers as decimal strings inside value tables.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cylinder import RINGS, CylFn
from .errors import DomainError, ParameterError, ParseError
from .khomology import HomT, in_T
from .operators import ToeplitzSymbol
from .sparse import TruncOp


def scalar_to_str(v, ring: str) -> str:
    if ring == "int":
        return str(int(v))
    if ring == "rat":
        v = Fraction(v)
        return f"{v.numerator}/{v.denominator}"
    if ring == "cfloat":
        return repr(complex(v))
    raise ParameterError(f"unknown scalar ring {ring!r}")


def scalar_from_str(text, ring: str, field: str):
    try:
        if ring == "int":
            return int(text)
        if ring == "rat":
            return Fraction(text)
        if ring == "cfloat":
            return complex(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(field, f"bad {ring} scalar {text!r}") from exc
    raise ParseError("ring", f"unknown scalar ring {ring!r}")


def _need(obj, key, kind, where=""):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(where + key, "missing")
    v = obj[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise ParseError(where + key, f"expected integer, got {v!r}")
    if kind is not int and not isinstance(v, kind):
        raise ParseError(where + key, f"expected {kind.__name__}, got {type(v).__name__}")
    return v


def cylfn_to_json(f: CylFn) -> dict:
    return {
        "s": f.s,
        "level": f.level,
        "domain": f.domain,
        "ring": f.ring,
        "values": [scalar_to_str(v, f.ring) for v in f.values],
    }


def cylfn_from_json(obj) -> CylFn:
    s = _need(obj, "s", int)
    level = _need(obj, "level", int)
    domain = obj.get("domain", "full")
    if domain not in ("full", "units"):
        raise ParseError("domain", f"expected 'full' or 'units', got {domain!r}")
    ring = obj.get("ring", "int")
    if ring not in RINGS:
        raise ParseError("ring", f"unknown scalar ring {ring!r}")
    raw = _need(obj, "values", list)
    vals = [scalar_from_str(v, ring, f"values[{i}]") for i, v in enumerate(raw)]
    try:
        return CylFn(s, level, tuple(vals), ring, domain)
    except (ParameterError, DomainError) as exc:
        raise ParseError("values", str(exc)) from exc


def homt_to_json(phi: HomT) -> dict:
    return {"s": phi.s, "coeffs": [{"y": y, "phi": c} for y, c in phi.coeffs.items()]}


def homt_from_json(obj) -> HomT:
    s = _need(obj, "s", int)
    if s < 2:
        raise ParseError("s", f"base must be >= 2, got {s}")
    coeffs = {}
    for i, item in enumerate(_need(obj, "coeffs", list)):
        y = _need(item, "y", int, f"coeffs[{i}].")
        phi = _need(item, "phi", int, f"coeffs[{i}].")
        if not in_T(y, s):
            raise ParseError(f"coeffs[{i}].y", f"{y} is not in T for s={s}")
        if y in coeffs:
            raise ParseError(f"coeffs[{i}].y", f"duplicate index {y}")
        coeffs[y] = phi
    return HomT(s, coeffs)


def toeplitz_to_json(sym: ToeplitzSymbol) -> dict:
    ring = "cfloat" if any(isinstance(c, complex) for c in sym.coeffs.values()) else "rat"
    return {
        "ring": ring,
        "coeffs": [{"m": m, "phi": scalar_to_str(c, ring)} for m, c in sym.coeffs.items()],
    }


def toeplitz_from_json(obj) -> ToeplitzSymbol:
    ring = obj.get("ring", "rat") if isinstance(obj, dict) else None
    if ring not in ("rat", "cfloat"):
        raise ParseError("ring", f"expected 'rat' or 'cfloat', got {ring!r}")
    out = {}
    for i, item in enumerate(_need(obj, "coeffs", list)):
        m = _need(item, "m", int, f"coeffs[{i}].")
        out[m] = scalar_from_str(_need(item, "phi", str, f"coeffs[{i}]."), ring, f"coeffs[{i}].phi")
    return ToeplitzSymbol(out)


def _label_out(label):
    return label if isinstance(label, int) else list(label)


def _label_in(label):
    return label if isinstance(label, int) else tuple(label)


def truncop_to_json(op: TruncOp) -> dict:
    """Sparse triplets plus the bases and faithful columns."""
    ents = op.entries()
    ring = "int"
    if any(isinstance(v, complex) for _, v in ents):
        ring = "cfloat"
    elif any(isinstance(v, Fraction) and v.denominator != 1 for _, v in ents):
        ring = "rat"
    return {
        "ring": ring,
        "row_basis": [_label_out(r) for r in op.rows],
        "col_basis": [_label_out(c) for c in op.cols],
        "rows": [_label_out(r) for (r, _), _ in ents],
        "cols": [_label_out(c) for (_, c), _ in ents],
        "vals": [scalar_to_str(v, ring) for _, v in ents],
        "safe_cols": [_label_out(c) for c in op.cols if c in op.safe_cols],
    }


def truncop_from_json(obj) -> TruncOp:
    ring = obj.get("ring", "rat") if isinstance(obj, dict) else None
    if ring not in RINGS:
        raise ParseError("ring", f"unknown scalar ring {ring!r}")
    rows = [_label_in(r) for r in _need(obj, "rows", list)]
    cols = [_label_in(c) for c in _need(obj, "cols", list)]
    vals = _need(obj, "vals", list)
    if not (len(rows) == len(cols) == len(vals)):
        raise ParseError("vals", "rows, cols and vals must have equal length")
    rb = [_label_in(r) for r in obj.get("row_basis", sorted(set(rows)))]
    cb = [_label_in(c) for c in obj.get("col_basis", sorted(set(cols)))]
    entries = {
        (r, c): scalar_from_str(v, ring, f"vals[{i}]")
        for i, (r, c, v) in enumerate(zip(rows, cols, vals))
    }
    safe = obj.get("safe_cols")
    try:
        return TruncOp(rb, cb, entries, None if safe is None else [_label_in(c) for c in safe])
    except ParameterError as exc:
        raise ParseError("rows", str(exc)) from exc


_KINDS = {
    "cylfn": (cylfn_to_json, cylfn_from_json, CylFn),
    "homt": (homt_to_json, homt_from_json, HomT),
    "toeplitz": (toeplitz_to_json, toeplitz_from_json, ToeplitzSymbol),
    "truncop": (truncop_to_json, truncop_from_json, TruncOp),
}


def dumps(obj) -> str:
    for enc, _, cls in _KINDS.values():
        if isinstance(obj, cls):
            return json.dumps(enc(obj))
    raise ParameterError(f"no codec for {type(obj).__name__}")


def loads(kind: str, text):
    """Decode ``text`` (a JSON string or an already-parsed object) as ``kind``."""
    if kind not in _KINDS:
        raise ParameterError(f"unknown payload kind {kind!r}")
    if isinstance(text, (str, bytes)):
        try:
            text = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("<document>", str(exc)) from exc
    return _KINDS[kind][1](text)


def load_file(kind: str, path) -> object:
    return loads(kind, Path(path).read_text(encoding="utf-8"))
