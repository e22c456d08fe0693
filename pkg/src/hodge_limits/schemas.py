"""Versioned JSON schemas for every file the package reads or writes."""
from __future__ import annotations

import jsonschema

SCHEMA_VERSION = 1

_scalar = {"oneOf": [
    {"type": "string", "pattern": r"^[+-]?[0-9/]*([+-]?[0-9/]*\*?i)?$", "minLength": 1},
    {"type": "integer"},
]}
_vector = {"type": "array", "items": _scalar}
_matrix = {"type": "array", "items": _vector}
_subspace = {"type": "array", "items": _vector}
_hodge = {"type": "object", "required": ["p_min", "steps"],
          "properties": {"p_min": {"type": "integer"},
                         "steps": {"type": "array", "minItems": 1, "items": _subspace}}}
_weight = {"type": "object", "required": ["center", "steps"],
           "properties": {"center": {"type": "integer", "minimum": 0},
                          "steps": {"type": "array", "minItems": 1, "items": _subspace}}}
_form = {"oneOf": [
    _matrix,
    {"type": "object", "required": ["matrix"],
     "properties": {"matrix": _matrix,
                    "symmetry": {"enum": ["symmetric", "antisymmetric"]}}},
]}
_graded = {"type": "object", "patternProperties": {r"^-?[0-9]+$": {"type": "integer", "minimum": 0}},
           "additionalProperties": False}
_betti = {"type": "array", "items": {"type": "integer", "minimum": 0}}

SCHEMAS: dict[str, dict] = {
    "limit_instance": {
        "$id": "hodge-limits/limit_instance/v1",
        "type": "object",
        "required": ["dim"],
        "properties": {
            "dim": {"type": "integer", "minimum": 1},
            "m": {"type": "integer", "minimum": 0},
            "S": _form, "N": _matrix, "T": _matrix, "W": _weight, "F": _hodge,
            "note": {"type": "string"},
        },
        "additionalProperties": False,
    },
    "cs_instance": {
        "$id": "hodge-limits/cs_instance/v1",
        "type": "object",
        "required": ["n", "m", "central", "limit", "ranks"],
        "properties": {
            "name": {"type": "string"},
            "n": {"type": "integer", "minimum": 1},
            "m": {"type": "integer", "minimum": 0},
            "central": {"type": "object", "required": ["graded"], "properties": {"graded": _graded}},
            "limit": {"type": "object", "required": ["graded"],
                      "properties": {"graded": _graded, "N_power_ranks": _betti}},
            "homology_in_dim": {"type": "integer", "minimum": 0},
            "homology_out_dim": {"type": "integer", "minimum": 0},
            "ranks": {"type": "object", "required": ["alpha", "i_star", "N", "beta"],
                      "properties": {k: {"type": "integer", "minimum": 0}
                                     for k in ("alpha", "i_star", "N", "beta")},
                      "additionalProperties": False},
            "provenance": {"type": "object"},
        },
        "additionalProperties": False,
    },
    "snc_fiber": {
        "$id": "hodge-limits/snc_fiber/v1",
        "type": "object",
        "required": ["components", "double_locus"],
        "properties": {
            "name": {"type": "string"},
            "m": {"type": "integer", "minimum": 0},
            "components": {"type": "array", "minItems": 1, "items": {
                "type": "object", "required": ["name", "betti"],
                "properties": {"name": {"type": "string"}, "betti": _betti}}},
            "double_locus": {"type": "object", "required": ["name", "betti"],
                             "properties": {"name": {"type": "string"}, "betti": _betti}},
            "d1": {"type": "object", "patternProperties": {r"^[0-9]+$": {
                "type": "object",
                "properties": {"rank": {"type": "integer", "minimum": 0}, "matrix": _matrix}}},
                "additionalProperties": False},
            "provenance": {"type": "object"},
        },
        "additionalProperties": False,
    },
    "severi_catalogue": {
        "$id": "hodge-limits/severi_catalogue/v1",
        "type": "object",
        "required": ["version", "entries"],
        "properties": {
            "version": {"type": "integer"},
            "entries": {"type": "array", "items": {
                "type": "object",
                "required": ["name", "d", "m", "ambient_proj_dim", "dim_G", "dim_H",
                             "stabilizer_group", "rep_dim_sym3", "sections_dim",
                             "sections_weight", "ring_name", "betti"],
                "properties": {
                    "name": {"type": "string"},
                    "d": {"type": "integer"}, "m": {"type": "integer"},
                    "ambient_proj_dim": {"type": "integer"},
                    "dim_G": {"type": "integer"}, "dim_H": {"type": "integer"},
                    "stabilizer_group": {"type": "string"},
                    "rep_dim_sym3": {"type": "integer"}, "sections_dim": {"type": "integer"},
                    "sections_weight": {"type": "array", "items": {"type": "string"},
                                        "minItems": 2, "maxItems": 2},
                    "ring_name": {"type": "string"},
                    "betti": _betti,
                    "V_hodge_expected": {"type": ["array", "null"],
                                         "items": {"type": "integer"}},
                    "chi_V_expected": {"type": ["integer", "null"]},
                    "notes": {"type": "array", "items": {"type": "string"}},
                }}},
        },
    },
    "report": {
        "$id": "hodge-limits/report/v1",
        "type": "object",
        "required": ["schema_version", "command", "inputs_digest", "verdicts", "golden",
                     "exit_status"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"type": "string"},
            "inputs_digest": {"type": "string"},
            "verdicts": {"type": "array"},
            "golden": {"type": "array"},
            "result": {},
            "exit_status": {"type": "integer"},
            "error": {"type": ["string", "null"]},
        },
    },
}


class SchemaError(ValueError):
    pass


def validate_instance(kind: str, obj) -> None:
    if kind not in SCHEMAS:
        raise KeyError(f"no schema named {kind!r}")
    try:
        jsonschema.validate(obj, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{kind} schema violation at {where}: {exc.message}") from exc


__all__ = ["SCHEMA_VERSION", "SCHEMAS", "SchemaError", "validate_instance"]
