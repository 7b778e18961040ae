"""JSON report encoding. Rationals are written as ``"p/q"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .complex import CohomologyClass
from .exterior import Form, mask_indices, popcount

SCHEMA = "nilcohom/1"


def fraction_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def form_json(w: Form | None):
    if w is None:
        return None
    monos = sorted(w.terms, key=lambda m: (popcount(m), mask_indices(m)))
    return [{"monomial": list(mask_indices(m)), "coeff": fraction_str(w.coeff(m))} for m in monos]


def class_json(c: CohomologyClass | None):
    if c is None:
        return None
    return {"degree": c.degree, "coords": [fraction_str(x) for x in c.coords]}


def matrix_json(m):
    return [[fraction_str(x) for x in row] for row in m]


def _default(obj):
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Form):
        return form_json(obj)
    if isinstance(obj, CohomologyClass):
        return class_json(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def envelope(command: str, source: str, results, warnings=()) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input": source,
        "results": results,
        "warnings": list(warnings),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, default=_default) + "\n"
