"""Published JSON Schema for scenario documents.

Served by the HTTP API so clients can build editors without hardcoding
the format. The parser in ``serialization`` stays the semantic source of
truth; this schema mirrors its structure and is held in sync by tests
that validate the shipped example documents against it.
"""

from __future__ import annotations

from ..model import CURRENT_SCHEMA_VERSION, SUPPORTED_SCHEMA_VERSIONS

_QUANTITY = {
    "type": "object",
    "required": ["value", "unit"],
    "properties": {
        "value": {"type": "number"},
        "unit": {"enum": ["kgCO2e", "tCO2e"]},
    },
    "additionalProperties": False,
}

_COUNT = {"type": "integer", "minimum": 0}

SCENARIO_JSON_SCHEMA: dict = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "Induced-effect assessment scenario",
    "type": "object",
    "required": ["schema_version", "scenario"],
    "properties": {
        "schema_version": {"enum": list(SUPPORTED_SCHEMA_VERSIONS)},
        "metadata": {
            "type": "object",
            "properties": {
                "title": {"type": "string"},
                "author": {"type": "string"},
                "date": {"type": "string"},
            },
        },
        "scenario": {
            "type": "object",
            "required": [
                "service_id",
                "activity_id",
                "mechanism",
                "period",
                "perspective",
                "estimation_path",
                "coefficient",
            ],
            "properties": {
                "service_id": {"type": "string"},
                "activity_id": {"type": "string"},
                "mechanism": {"enum": ["substitution", "optimization"]},
                "period": {
                    "type": "object",
                    "required": ["unit"],
                    "properties": {
                        "unit": {"enum": ["day", "month", "year"]},
                        "label": {"type": "string"},
                    },
                    "additionalProperties": False,
                },
                "perspective": {
                    "type": "object",
                    "required": ["kind"],
                    "properties": {
                        "kind": {"enum": ["CS", "P", "PP", "F"]},
                        "uncertainty_tags": {
                            "type": "object",
                            "additionalProperties": {
                                "enum": ["data_uncertainty", "future_uncertainty"]
                            },
                        },
                    },
                    "additionalProperties": False,
                },
                "estimation_path": {"enum": ["case_study", "model_average", "aggregate"]},
                "coefficient": {
                    "type": "object",
                    "required": ["k"],
                    "properties": {
                        "k": {"type": "number", "exclusiveMinimum": 0},
                        "source": {
                            "enum": ["user", "volunteer_default", "random_sample_default"]
                        },
                    },
                    "additionalProperties": False,
                },
                "partition": {
                    "type": "object",
                    "properties": {
                        "modified_count": _COUNT,
                        "unaffected_count": _COUNT,
                        "rebound_count": _COUNT,
                        "modified_count_basis": {
                            "enum": [
                                "observed_service_usage",
                                "independent_estimate",
                                "unspecified",
                            ]
                        },
                        "activity_modified": _QUANTITY,
                        "activity_unaffected": _QUANTITY,
                        "activity_rebound": _QUANTITY,
                        "optimized_all_usages": _QUANTITY,
                        "service_all_usages": _QUANTITY,
                    },
                    "additionalProperties": False,
                },
                "case_study": {
                    "type": "object",
                    "required": ["modified"],
                    "properties": {
                        "modified": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "required": ["id", "activity", "optimized", "service"],
                                "properties": {
                                    "id": {"type": "string"},
                                    "activity": _QUANTITY,
                                    "optimized": _QUANTITY,
                                    "service": _QUANTITY,
                                },
                                "additionalProperties": False,
                            },
                        },
                        "rebound": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["id", "optimized", "service"],
                                "properties": {
                                    "id": {"type": "string"},
                                    "optimized": _QUANTITY,
                                    "service": _QUANTITY,
                                },
                                "additionalProperties": False,
                            },
                        },
                        "sampling": {"enum": ["random", "volunteer", "unknown"]},
                        "observation_note": {"type": ["string", "null"]},
                    },
                    "additionalProperties": False,
                },
                "model_average": _QUANTITY,
                "rebound_model": {
                    "type": "object",
                    "required": ["usage_total", "rebound_share"],
                    "properties": {
                        "usage_total": {"type": "number", "minimum": 0},
                        "rebound_share": {"type": "number", "minimum": 0, "maximum": 1},
                        "per_usage_activity": _QUANTITY,
                        "per_usage_optimized": _QUANTITY,
                        "per_usage_service": _QUANTITY,
                    },
                    "additionalProperties": False,
                },
                "evidence": {
                    "type": "object",
                    "properties": {
                        "mr_split_evidence": {
                            "type": "array",
                            "items": {"type": "string"},
                        },
                        "zero_rebound_justification": {"type": ["string", "null"]},
                        "modified_share": {
                            "type": "object",
                            "required": ["value"],
                            "properties": {
                                "value": {"type": "number"},
                                "origin_label": {"type": "string"},
                                "reused_from_past": {"type": "boolean"},
                                "modified_count_at_origin": _COUNT,
                            },
                            "additionalProperties": False,
                        },
                        "mainstream_service": {"type": "boolean"},
                    },
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "baseline": {
            "type": "object",
            "required": ["strategy", "base_value"],
            "properties": {
                "strategy": {
                    "enum": ["fixed_at_introduction", "fixed_at_assessment", "projection"]
                },
                "base_value": _QUANTITY,
                "intro_period": {"type": "integer"},
                "growth_rate": {"type": "number"},
                "efficiency_rate": {"type": "number"},
                "cone": {
                    "type": "object",
                    "required": ["growth_lo", "growth_hi", "efficiency_lo", "efficiency_hi"],
                    "properties": {
                        "growth_lo": {"type": "number"},
                        "growth_hi": {"type": "number"},
                        "efficiency_lo": {"type": "number"},
                        "efficiency_hi": {"type": "number"},
                    },
                    "additionalProperties": False,
                },
                "with_service": {"type": "array", "items": _QUANTITY},
                "anchor_period": {"type": "integer"},
            },
            "additionalProperties": False,
        },
        "distributions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["target", "shape"],
                "properties": {
                    "target": {"type": "string"},
                    "shape": {
                        "type": "object",
                        "required": ["kind"],
                        "properties": {
                            "kind": {"enum": ["point", "uniform", "triangular", "discrete"]},
                            "value": {"type": "number"},
                            "lo": {"type": "number"},
                            "hi": {"type": "number"},
                            "mode": {"type": "number"},
                            "values": {"type": "array", "items": {"type": "number"}},
                            "weights": {"type": "array", "items": {"type": "number"}},
                        },
                        "additionalProperties": False,
                    },
                    "uncertainty_class": {
                        "enum": ["data_uncertainty", "future_uncertainty"]
                    },
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def schema_payload() -> dict:
    """Body of the schema endpoint: current and supported versions plus
    the document schema itself."""
    return {
        "schema_version": CURRENT_SCHEMA_VERSION,
        "supported_versions": list(SUPPORTED_SCHEMA_VERSIONS),
        "scenario_schema": SCENARIO_JSON_SCHEMA,
    }
