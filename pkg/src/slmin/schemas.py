"""JSON Schemas for the reports the CLI emits."""

VERDICT = {
    "type": "object",
    "required": ["schema_version", "group", "degree", "field", "minimal", "theorem_trail"],
    "properties": {
        "schema_version": {"const": "slmin.verdict/1"},
        "group": {"enum": ["SL", "STP", "PRODUCT"]},
        "degree": {"type": ["integer", "null"], "minimum": 1},
        "field": {"type": "string"},
        "minimal": {"type": ["boolean", "null"]},
        "totally_minimal": {"type": "boolean"},
        "witness_order": {"type": "integer", "minimum": 2},
        "condition": {"type": "string"},
        "family": {"type": "object"},
        "theorem_trail": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
    "additionalProperties": False,
}

ORACLE_REPORT = {
    "type": "object",
    "required": ["schema_version", "lemma", "n", "p", "e", "modulus", "result", "details"],
    "properties": {
        "schema_version": {"const": "slmin.oracle/1"},
        "lemma": {"enum": ["center", "centerfree-quotient", "ut-intersection", "derived-subgroup"]},
        "n": {"type": "integer", "minimum": 2},
        "p": {"type": "integer", "minimum": 2},
        "e": {"type": "integer", "minimum": 1},
        "modulus": {"type": "string"},
        "result": {"enum": ["pass", "fail", "exploratory-fail"]},
        "details": {"type": "object"},
    },
    "additionalProperties": False,
}

ORACLE_SUITE = {
    "type": "object",
    "required": ["schema_version", "reports"],
    "properties": {
        "schema_version": {"const": "slmin.oracle/1"},
        "reports": {"type": "array", "items": ORACLE_REPORT},
    },
}

SCAN = {
    "type": "object",
    "required": ["schema_version", "scan", "limit", "theorem_trail", "summary", "records"],
    "properties": {
        "schema_version": {"const": "slmin.verdict/1"},
        "scan": {"enum": ["fermat", "mersenne"]},
        "limit": {"type": "integer"},
        "theorem_trail": {"type": "array", "items": {"type": "string"}},
        "summary": {
            "type": "object",
            "required": ["checked", "detected", "faults"],
            "properties": {"faults": {"const": 0}},
        },
        "records": {"type": "array", "items": {"type": "object", "required": ["p", "side_arithmetic", "side_gaussian"]}},
    },
}

RECORD = {
    "type": "object",
    "required": ["schema_version", "theorem", "p", "side_arithmetic", "side_gaussian"],
    "properties": {"schema_version": {"const": "slmin.verdict/1"}, "theorem": {"type": "string"}},
}
