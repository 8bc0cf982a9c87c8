"""JSON formats for curves, divisors, tensors and reports.

Integers of magnitude >= 2**53 are written as decimal strings, rationals as
"n/d" strings; both are accepted back on input.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .curve import Curve, Divisor, Point
from .errors import UnsupportedDivisor
from .fields import field_make
from .hopf import BilinearTensor

SAFE_INT = 2**53


class InputError(ValueError):
    """Malformed input file; the message carries file and line context."""


def jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return jsonable(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(path: str | Path) -> tuple[Any, str]:
    """Parse a JSON file; returns the document and its sha256 digest."""
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return doc, hashlib.sha256(raw).hexdigest()


def _number(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def curve_from_json(doc: dict) -> Curve:
    try:
        field = field_make(doc["field"], allow_char_two=False)
        coeffs = [field.convert(_number(c)) for c in doc["f"]]
    except KeyError as exc:
        raise InputError(f"curve JSON is missing key {exc}") from exc
    return Curve(field, tuple(coeffs))


def divisor_from_json(doc: dict, curve: Curve) -> Divisor:
    K = curve.field
    pairs = []
    for entry in doc.get("affine", []):
        try:
            P = Point(K.convert(_number(entry["x"])), K.convert(_number(entry["y"])))
        except (TypeError, ValueError) as exc:
            raise UnsupportedDivisor(f"point {entry} is not rational over {K}: {exc}") from exc
        except KeyError as exc:
            raise InputError(f"divisor point {entry} is missing key {exc}") from exc
        curve.check_point(P)
        pairs.append((P, int(entry.get("mult", 1))))
    return Divisor.make(pairs, int(doc.get("inf", 0)))


def divisor_to_json(D: Divisor, curve: Curve) -> dict:
    K = curve.field
    return {
        "affine": [{"x": K.jsonable(P.x), "y": K.jsonable(P.y), "mult": m} for P, m in D.affine],
        "inf": D.inf,
    }


def tensor_from_json(doc: dict) -> BilinearTensor:
    try:
        field = field_make(doc["field"])
        dims = tuple(int(v) for v in doc["dims"])
        coeffs = tuple(field.convert(_number(v) if not isinstance(v, list) else v) for v in doc["coeffs"])
    except KeyError as exc:
        raise InputError(f"tensor JSON is missing key {exc}") from exc
    return BilinearTensor(field, dims, coeffs)
