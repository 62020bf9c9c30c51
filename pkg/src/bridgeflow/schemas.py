"""JSON Schemas for everything the CLI prints with ``--json``."""

from __future__ import annotations

_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}

INSTANCE = {
    "type": "object",
    "properties": {k: _POS for k in ("a", "b", "w", "b_prime", "a_prime")},
    "required": ["a", "b", "w", "b_prime", "a_prime"],
    "additionalProperties": False,
}

TRACE_STEP = {
    "type": "object",
    "properties": {
        "direction": {"enum": ["down", "up"]},
        "instance": INSTANCE,
        "product": _NAT,
        "defect": {"type": ["integer", "null"]},
    },
    "required": ["direction", "instance", "product"],
}

TRACE = {"type": "array", "items": TRACE_STEP}

_FLOW_COMMON = {"method": {"type": "string"}, "mincut": _POS, "trace": TRACE}

FLOW_RESULT = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"status": {"const": "exact"}, "value": _NAT, **_FLOW_COMMON},
            "required": ["status", "value", "method", "mincut", "trace"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "status": {"const": "open"},
                "lower": _NAT,
                "upper": _NAT,
                "conjectured": _NAT,
                **_FLOW_COMMON,
            },
            "required": ["status", "lower", "upper", "conjectured", "method", "mincut", "trace"],
            "additionalProperties": False,
        },
    ]
}

ORACLE_REPORT = {
    "type": "object",
    "properties": {
        "best_rank": _NAT,
        "trials": _POS,
        "modulus": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer"},
        "attained_at_trial": _NAT,
    },
    "required": ["best_rank", "trials", "modulus", "seed", "attained_at_trial"],
    "additionalProperties": False,
}

CUT = {
    "type": "object",
    "properties": {
        "capacity": _POS,
        "source_side": {"type": "array", "items": {"type": "string"}},
        "sink_side": {"type": "array", "items": {"type": "string"}},
        "edges": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["capacity", "source_side", "sink_side", "edges"],
}

MINCUT = {
    "type": "object",
    "properties": {"mincut": _POS, "cut": CUT, "cuts": {"type": "array", "items": CUT}},
    "required": ["mincut", "cut", "cuts"],
}

_REGION = {"enum": ["U", "V", "W", "X", "Y"]}
_OPT_NAT = {"type": ["integer", "null"], "minimum": 0}

SCAN_ROW = {
    "type": "object",
    "properties": {
        **{k: _POS for k in ("a", "b", "w", "b_prime", "a_prime")},
        "region_top": _REGION,
        "region_bottom": _REGION,
        "mincut": _POS,
        "status": {"enum": ["exact", "open"]},
        "value": _OPT_NAT,
        "lower": _OPT_NAT,
        "upper": _OPT_NAT,
        "conjectured": _OPT_NAT,
        "method": {"type": "string"},
        "oracle_best_rank": _OPT_NAT,
        "agreement": {"type": ["boolean", "null"]},
        "conjecture_hit": {"type": ["boolean", "null"]},
    },
    "required": [
        "a", "b", "w", "b_prime", "a_prime", "region_top", "region_bottom", "mincut", "status",
        "value", "lower", "upper", "conjectured", "method", "oracle_best_rank", "agreement", "conjecture_hit",
    ],
    "additionalProperties": False,
}

SCAN = {"type": "array", "items": SCAN_ROW}

REGIONS = {
    "type": "object",
    "properties": {
        "w": {"type": "integer", "minimum": 2},
        "max": _POS,
        "regions": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"a": _POS, "b": _POS, "region": _REGION},
                "required": ["a", "b", "region"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["w", "max", "regions"],
}

BY_COMMAND = {
    "solve": FLOW_RESULT,
    "mincut": MINCUT,
    "oracle": ORACLE_REPORT,
    "trace": TRACE,
    "scan": SCAN,
    "regions": REGIONS,
}
