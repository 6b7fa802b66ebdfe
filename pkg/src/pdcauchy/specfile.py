"""JSON spec documents: schema, parsing and serialization.

A spec looks like::

    {
      "mode": "theorem13",
      "distribution": [
        {"type": "density", "kind": "gaussian", "sigma": 1.0, "weight": [1, 0]},
        {"sum": [{"type": "dirac", "location": 1.0}], "weight": [0.5, 0]}
      ],
      "check": {"modulations": [0, 1], "n": "auto", "s_max": 8},
      "options": {"seed": 0, "trials": 256}
    }

Nodes of ``distribution`` are atoms or ``sum`` groups; a group multiplies
its children by ``weight`` and ``e^{i modulation t}``.
"""
from __future__ import annotations

import json
from typing import Any

import jsonschema

from .checker import CheckConfig
from .distribution import DensityAtom, DiracAtom, Distribution
from .distribution.atoms import BASE_KINDS, PARAM_NAMES
from .errors import SpecError

MODES = ("theorem13", "theorem12", "oracle", "verify")

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["distribution"],
    "properties": {
        "mode": {"enum": list(MODES)},
        "distribution": {"type": "array", "items": {"$ref": "#/$defs/node"}},
        "check": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "modulations": {"type": "array", "items": {"type": "number"},
                                "minItems": 2, "maxItems": 2},
                "n": {"oneOf": [{"const": "auto"}, {"type": "integer", "minimum": 0}]},
                "grid": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "y_min": {"type": "number", "exclusiveMinimum": 0},
                        "y_max": {"type": "number", "exclusiveMinimum": 0},
                        "count": {"type": "integer", "minimum": 2},
                        "spacing": {"enum": ["log", "linear"]},
                    },
                },
                "s_max": {"type": "integer", "minimum": 0},
                "tol": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"rel": {"type": "number", "minimum": 0},
                                   "abs": {"type": "number", "minimum": 0}},
                },
            },
        },
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "seed": {"type": "integer"},
                "trials": {"type": "integer", "minimum": 0},
                "k_max": {"type": "integer", "minimum": 0},
                "strict": {"type": "boolean"},
                "suite": {"type": "string"},
            },
        },
    },
    "$defs": {
        # discriminate on "sum" and "type" so errors point at the right record kind
        "node": {
            "type": "object",
            "if": {"required": ["sum"]},
            "then": {"$ref": "#/$defs/sum"},
            "else": {
                "if": {"required": ["type"], "properties": {"type": {"const": "dirac"}}},
                "then": {"$ref": "#/$defs/dirac"},
                "else": {"$ref": "#/$defs/density"},
            },
        },
        "dirac": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type"],
            "properties": {
                "type": {"const": "dirac"},
                "location": {"type": "number"},
                "derivative_order": {"type": "integer", "minimum": 0},
                "weight": _COMPLEX,
                "modulation": {"type": "number"},
            },
        },
        "density": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type", "kind"],
            "properties": {
                "type": {"const": "density"},
                "kind": {"enum": list(BASE_KINDS)},
                "sigma": {"type": "number"},
                "lam": {"type": "number"},
                "a": {"type": "number"},
                "b": {"type": "number"},
                "poly": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                "weight": _COMPLEX,
                "modulation": {"type": "number"},
                "growth_degree": {"type": "integer", "minimum": 0},
            },
        },
        "sum": {
            "type": "object",
            "additionalProperties": False,
            "required": ["sum"],
            "properties": {
                "sum": {"type": "array", "items": {"$ref": "#/$defs/node"}},
                "weight": _COMPLEX,
                "modulation": {"type": "number"},
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _weight(rec: dict) -> complex:
    re, im = rec.get("weight", [1.0, 0.0])
    return complex(re, im)


def _atom(rec: dict):
    if rec["type"] == "dirac":
        return DiracAtom(location=rec.get("location", 0.0),
                         derivative_order=rec.get("derivative_order", 0),
                         weight=_weight(rec), modulation=rec.get("modulation", 0.0))
    kind = rec["kind"]
    pname = PARAM_NAMES[kind]
    extra = [k for k in ("sigma", "lam", "a", "b") if k in rec and k != pname]
    if extra:
        raise SpecError(f"{kind} atom does not take parameter(s) {', '.join(extra)}")
    if pname is not None and pname not in rec:
        raise SpecError(f"{kind} atom needs parameter {pname!r}")
    return DensityAtom(kind, rec.get(pname) if pname else None,
                       poly=tuple(rec.get("poly", [1.0])), weight=_weight(rec),
                       modulation=rec.get("modulation", 0.0),
                       growth_degree=rec.get("growth_degree"))


def _nodes(items: list) -> Distribution:
    out = Distribution()
    for rec in items:
        if "sum" in rec:
            inner = _nodes(rec["sum"]) * _weight(rec)
            if rec.get("modulation"):
                inner = inner.modulate(rec["modulation"])
            out = out + inner
        else:
            out = out + Distribution.of(_atom(rec))
    return out


def parse_spec(doc: Any) -> dict:
    """Validate a spec document; returns distribution, config, mode and options."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SpecError(f"spec invalid at {where}: {e.message}")
    try:
        dist = _nodes(doc["distribution"])
        config = CheckConfig.from_dict(doc.get("check", {}))
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from exc
    return {"distribution": dist, "config": config, "mode": doc.get("mode", "theorem13"),
            "options": dict(doc.get("options", {})), "check": dict(doc.get("check", {}))}


def load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc})") from exc
    return parse_spec(doc)


def complex_pair(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def atom_record(atom) -> dict:
    if isinstance(atom, DiracAtom):
        return {"type": "dirac", "location": atom.location,
                "derivative_order": atom.derivative_order,
                "weight": complex_pair(atom.weight), "modulation": atom.modulation}
    rec = {"type": "density", "kind": atom.kind}
    pname = PARAM_NAMES[atom.kind]
    if pname:
        rec[pname] = atom.param
    rec.update({"poly": list(atom.poly), "weight": complex_pair(atom.weight),
                "modulation": atom.modulation, "growth_degree": atom.growth_degree})
    return rec


def distribution_records(F: Distribution) -> list:
    return [atom_record(a) for a in F.atoms]
