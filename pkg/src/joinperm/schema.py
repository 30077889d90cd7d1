"""JSON instance formats read by the command line tool."""

import json

import jsonschema

from .errors import SchemaError

_point = {"type": ["string", "integer", "array"]}
_set = {"type": "array", "items": _point}
_family = {"type": "array", "items": _set}
_space = {
    "type": "object",
    "required": ["carrier", "opens"],
    "properties": {"carrier": _set, "opens": _family},
}

INSTANCE_SCHEMAS = {
    "topology": {
        "type": "object",
        "required": ["kind", "space", "target", "collection"],
        "properties": {
            "kind": {"const": "topology"},
            "space": _space,
            "target": _space,
            "collection": _family,
            "values": _set,
        },
    },
    "uv_desk": {
        "type": "object",
        "required": ["kind", "U", "V", "collection"],
        "properties": {
            "kind": {"const": "uv_desk"},
            "U": _family,
            "V": _family,
            "collection": _family,
            "values": _set,
        },
    },
    "prf": {
        "type": "object",
        "required": ["kind", "arity", "collection", "pieces"],
        "properties": {
            "kind": {"const": "prf"},
            "arity": {"type": "integer", "minimum": 1},
            "collection": _family,
            "pieces": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "table": {"type": "array", "items": {
                            "type": "array", "minItems": 2, "maxItems": 2,
                            "prefixItems": [_point, {"type": "integer", "minimum": 0}]}},
                        "default": {"type": "integer", "minimum": 0},
                    },
                    "additionalProperties": False,
                },
            },
            "separators": {
                "oneOf": [
                    {"const": "re"},
                    {"type": "object", "additionalProperties": _set},
                ]
            },
            "values": _set,
        },
    },
    "real": {
        "type": "object",
        "required": ["kind", "cuts"],
        "properties": {
            "kind": {"const": "real"},
            "cuts": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        },
    },
}


def freeze(x):
    """JSON points to hashable points: arrays become tuples."""
    if isinstance(x, list):
        return tuple(freeze(v) for v in x)
    return x


def load_instance(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return validate_instance(data)


def validate_instance(data):
    if not isinstance(data, dict) or data.get("kind") not in INSTANCE_SCHEMAS:
        raise SchemaError(f"'kind' must be one of {sorted(INSTANCE_SCHEMAS)}")
    try:
        jsonschema.validate(data, INSTANCE_SCHEMAS[data["kind"]])
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc
    if data["kind"] == "prf":
        n = len(data["collection"])
        if len(data["pieces"]) != n:
            raise SchemaError("one piece is required per collection member")
        seps = data.get("separators", "re")
        if isinstance(seps, dict):
            for key in seps:
                if not key.isdigit() or not 0 < int(key) < (1 << n):
                    raise SchemaError(f"separator mask {key!r} out of range")
    if data["kind"] == "topology":
        for side in ("space", "target"):
            carrier = {freeze(x) for x in data[side]["carrier"]}
            for o in data[side]["opens"]:
                if not {freeze(x) for x in o} <= carrier:
                    raise SchemaError(f"an open set of {side} leaves its carrier")
    return data
