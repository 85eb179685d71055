"""JSON Schemas for the CLI output envelope, one payload schema per command."""

SCHEMA_VERSION = "1.0"

_rational = {
    "type": "object",
    "properties": {
        "num": {"type": "string", "pattern": r"^-?[0-9]+$"},
        "den": {"type": "string", "pattern": r"^[1-9][0-9]*$"},
    },
    "required": ["num", "den"],
    "additionalProperties": False,
}

_integer_string = {"type": "string", "pattern": r"^-?[0-9]+$"}
_decimal_string = {"type": "string", "pattern": r"^-?[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?$"}

_precision = {
    "type": "object",
    "properties": {
        "digits": {"type": "integer", "minimum": 1},
        "tol": _rational,
        "exact": {"type": "boolean"},
    },
    "required": ["exact"],
}

PAYLOADS = {
    "root": {
        "type": "object",
        "properties": {
            "k": {"type": "integer", "minimum": 3},
            "lo": _rational,
            "hi": _rational,
            "width": _rational,
            "midpoint_decimal": _decimal_string,
        },
        "required": ["k", "lo", "hi", "width", "midpoint_decimal"],
    },
    "seq": {
        "type": "object",
        "properties": {
            "k": {"type": "integer", "minimum": 3},
            "n": {"type": "integer", "minimum": 0},
            "terms": {"type": "array", "items": _integer_string},
            "last": _integer_string,
        },
        "required": ["k", "n", "terms", "last"],
    },
    "bounds": {
        "type": "object",
        "properties": {
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "k": {"type": "integer"},
                        "fib_lower": _rational,
                        "beta1": {"type": "string"},
                        "beta1_exact": {"type": "boolean"},
                        "lambda_lo": _rational,
                        "lambda_hi": _rational,
                        "fib_upper": _rational,
                        "phi_gap": _decimal_string,
                        "all_pass": {"type": "boolean"},
                    },
                    "required": [
                        "k", "fib_lower", "beta1", "lambda_lo", "lambda_hi",
                        "fib_upper", "phi_gap", "all_pass",
                    ],
                },
            },
            "all_pass": {"type": "boolean"},
        },
        "required": ["rows", "all_pass"],
    },
    "certify": {
        "type": "object",
        "properties": {
            "k": {"type": "integer", "minimum": 3},
            "kind": {"enum": ["pisot", "salem"]},
            "max_conjugate_modulus": _decimal_string,
            "unit_modulus_count": {"type": "integer", "minimum": 0},
            "minimal_poly_note": {"type": "string"},
        },
        "required": ["kind", "max_conjugate_modulus", "unit_modulus_count", "minimal_poly_note"],
    },
    "identities": {
        "type": "object",
        "properties": {
            "sweeps": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "name": {"type": "string"},
                        "range": {"type": "array", "items": {"type": "integer"}},
                        "passed": {"type": "boolean"},
                        "counterexample": {"type": ["integer", "null"]},
                    },
                    "required": ["name", "range", "passed", "counterexample"],
                },
            },
            "exceptions": {"type": "array", "items": {"type": "string"}},
            "all_pass": {"type": "boolean"},
        },
        "required": ["sweeps", "exceptions", "all_pass"],
    },
    "fit": {
        "type": "object",
        "properties": {
            "k": {"type": "integer", "minimum": 3},
            "C": _decimal_string,
            "decay_ratio": _decimal_string,
            "predicted_ratio": _decimal_string,
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "n": {"type": "integer"},
                        "a_n": _integer_string,
                        "C_lambda_n": _decimal_string,
                        "rel_error": _decimal_string,
                        "rel_error_bound": _decimal_string,
                    },
                    "required": ["n", "a_n", "C_lambda_n", "rel_error"],
                },
            },
        },
        "required": ["k", "C", "decay_ratio", "rows"],
    },
}


def envelope_schema(command: str) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "parameters": {"type": "object"},
            "precision": _precision,
            "payload": PAYLOADS[command],
        },
        "required": ["schema_version", "command", "parameters", "precision", "payload"],
        "additionalProperties": False,
    }
