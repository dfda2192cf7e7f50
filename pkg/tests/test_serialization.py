"""Document parsing, strict/lenient modes, units, canonical output."""

from __future__ import annotations

import copy
import json

import pytest

from ictfx import DiscreteWeighted, TriangularRange, UniformRange
from ictfx.workbench import (
    DocumentError,
    canonical_json,
    document_to_dict,
    parse_scenario,
    serialize_scenario,
)
from ictfx.workbench.serialization import format_path

from conftest import GOLDEN_NAMES, SCENARIO_DIR, load_document


def kg(value: float) -> dict:
    return {"value": value, "unit": "kgCO2e"}


def minimal_payload() -> dict:
    return {
        "schema_version": 1,
        "scenario": {
            "service_id": "svc",
            "activity_id": "act",
            "mechanism": "substitution",
            "period": {"unit": "year"},
            "perspective": {"kind": "P"},
            "estimation_path": "case_study",
            "coefficient": {"k": 1.0, "source": "random_sample_default"},
            "partition": {"modified_count": 1000},
            "case_study": {
                "sampling": "random",
                "modified": [
                    {
                        "id": "a",
                        "activity": kg(10.0),
                        "optimized": kg(0.0),
                        "service": kg(2.0),
                    },
                    {
                        "id": "b",
                        "activity": kg(12.0),
                        "optimized": kg(0.0),
                        "service": kg(2.0),
                    },
                ],
            },
        },
    }


def parse_payload(payload: dict, **kwargs):
    return parse_scenario(json.dumps(payload), **kwargs)


def expect_error(payload: dict, code: str, path_fragment: str = "", **kwargs):
    with pytest.raises(DocumentError) as exc_info:
        parse_payload(payload, **kwargs)
    err = exc_info.value
    assert err.code == code, f"got {err.code}: {err}"
    assert path_fragment in err.path
    return err


# ---------------------------------------------------------------------------
# round trips


@pytest.mark.parametrize("name", GOLDEN_NAMES)
def test_golden_documents_round_trip(name):
    text = (SCENARIO_DIR / f"{name}.json").read_text(encoding="utf-8")
    doc = parse_scenario(text, validate=False)
    emitted = serialize_scenario(doc)
    again = parse_scenario(emitted, validate=False)
    assert again == doc
    assert serialize_scenario(again) == emitted  # canonical form is a fixpoint


def test_canonical_json_is_key_order_independent():
    a = canonical_json({"b": 1, "a": [1, 2]})
    b = canonical_json({"a": [1, 2], "b": 1})
    assert a == b
    assert a.endswith("\n")


def test_minimal_document_parses():
    doc = parse_payload(minimal_payload())
    assert doc.scenario.service_id == "svc"
    assert doc.scenario.partition.modified_count == 1000
    assert len(doc.scenario.case_study.modified) == 2


def test_metadata_round_trips():
    payload = minimal_payload()
    payload["metadata"] = {"title": "T", "author": "A", "date": "2026-08-23"}
    doc = parse_payload(payload)
    assert doc.metadata.title == "T"
    again = parse_scenario(serialize_scenario(doc))
    assert again.metadata == doc.metadata


# ---------------------------------------------------------------------------
# units


def test_tonne_values_convert_to_kilograms():
    doc = load_document("telepresence_case_study")
    assert doc.scenario.baseline.base_value == 10_200_000.0  # 10200 tCO2e
    assert doc.scenario.baseline.with_service[0] == 1_500_000.0


def test_emitted_quantities_are_always_kilograms():
    doc = load_document("telepresence_case_study")
    data = document_to_dict(doc)
    assert data["baseline"]["base_value"] == {"value": 10_200_000.0, "unit": "kgCO2e"}


def test_bare_numbers_are_rejected():
    payload = minimal_payload()
    payload["scenario"]["case_study"]["modified"][0]["activity"] = 10.0
    err = expect_error(payload, "missing-unit", "modified[0].activity")
    assert "unit" in err.message


def test_unknown_units_are_rejected():
    payload = minimal_payload()
    payload["scenario"]["case_study"]["modified"][0]["activity"] = {
        "value": 10.0,
        "unit": "MJ",
    }
    expect_error(payload, "invalid-unit", "modified[0].activity.unit")


# ---------------------------------------------------------------------------
# structural errors


def test_missing_required_field():
    payload = minimal_payload()
    del payload["scenario"]["mechanism"]
    expect_error(payload, "missing-field", "scenario.mechanism")


def test_wrong_type_reports_path():
    payload = minimal_payload()
    payload["scenario"]["service_id"] = 5
    expect_error(payload, "wrong-type", "scenario.service_id")


def test_booleans_are_not_numbers():
    payload = minimal_payload()
    payload["scenario"]["coefficient"]["k"] = True
    expect_error(payload, "wrong-type", "coefficient.k")


def test_integral_floats_pass_as_counts_but_fractions_do_not():
    payload = minimal_payload()
    payload["scenario"]["partition"]["modified_count"] = 1000.0
    assert parse_payload(payload).scenario.partition.modified_count == 1000

    payload["scenario"]["partition"]["modified_count"] = 1000.5
    expect_error(payload, "wrong-type", "partition.modified_count")


def test_json_syntax_error_carries_position():
    with pytest.raises(DocumentError) as exc_info:
        parse_scenario("{\n  nope\n}")
    err = exc_info.value
    assert err.code == "syntax-error"
    assert "line 2" in err.message


def test_unsupported_schema_version():
    payload = minimal_payload()
    payload["schema_version"] = 99
    expect_error(payload, "unsupported-schema-version", "schema_version")


def test_rebound_instances_cannot_carry_an_activity():
    payload = minimal_payload()
    payload["scenario"]["case_study"]["rebound"] = [
        {"id": "r", "activity": kg(5.0), "optimized": kg(0.0), "service": kg(1.0)}
    ]
    expect_error(payload, "invalid-value", "rebound[0]")


def test_bad_enum_value_lists_alternatives():
    payload = minimal_payload()
    payload["scenario"]["mechanism"] = "teleportation"
    err = expect_error(payload, "invalid-value", "scenario.mechanism")
    assert "substitution" in err.message


def test_invalid_shape_kind():
    payload = minimal_payload()
    payload["distributions"] = [
        {"target": "coefficient.k", "shape": {"kind": "gaussian", "mu": 0}}
    ]
    expect_error(payload, "invalid-value", "distributions[0].shape.kind")


def test_discrete_shape_parses():
    payload = minimal_payload()
    payload["distributions"] = [
        {
            "target": "coefficient.k",
            "shape": {"kind": "discrete", "values": [0.5, 1.0], "weights": [0.3, 0.7]},
        }
    ]
    doc = parse_payload(payload)
    shape = doc.scenario.distributions[0].shape
    assert shape == DiscreteWeighted(values=(0.5, 1.0), weights=(0.3, 0.7))


def test_uniform_and_triangular_shapes_parse():
    payload = minimal_payload()
    payload["distributions"] = [
        {"target": "coefficient.k", "shape": {"kind": "uniform", "lo": 0.5, "hi": 1.5}},
    ]
    doc = parse_payload(payload)
    assert doc.scenario.distributions[0].shape == UniformRange(0.5, 1.5)

    payload["distributions"] = [
        {
            "target": "coefficient.k",
            "shape": {"kind": "triangular", "lo": 0.5, "mode": 1.0, "hi": 1.5},
        },
    ]
    doc = parse_payload(payload)
    assert doc.scenario.distributions[0].shape == TriangularRange(0.5, 1.0, 1.5)


# ---------------------------------------------------------------------------
# strict vs lenient


def test_strict_mode_rejects_unknown_fields():
    payload = minimal_payload()
    payload["scenario"]["x_custom"] = {"anything": 1}
    expect_error(payload, "unknown-field", "scenario.x_custom")


def test_lenient_mode_preserves_unknown_fields():
    payload = minimal_payload()
    payload["scenario"]["x_custom"] = {"anything": 1}
    payload["scenario"]["case_study"]["modified"][0]["note"] = "first participant"
    doc = parse_payload(payload, strict=False)
    paths = [format_path(path) for path, _ in doc.extras]
    assert "scenario.x_custom" in paths
    assert "scenario.case_study.modified[0].note" in paths

    emitted = serialize_scenario(doc)
    assert '"x_custom"' in emitted
    assert '"note"' in emitted
    again = parse_scenario(emitted, strict=False)
    assert again == doc


def test_extras_are_sorted_by_path():
    payload = minimal_payload()
    payload["zz_last"] = 1
    payload["aa_first"] = 2
    doc = parse_payload(payload, strict=False)
    paths = [format_path(path) for path, _ in doc.extras]
    assert paths == sorted(paths)


# ---------------------------------------------------------------------------
# validation hand-off


def test_parse_runs_domain_validation_by_default():
    payload = minimal_payload()
    payload["scenario"]["coefficient"] = {"k": -1.0, "source": "user"}
    err = expect_error(payload, "non-positive-coefficient", "coefficient.k")
    assert err.issues  # full report travels with the error


def test_validation_can_be_deferred():
    payload = minimal_payload()
    payload["scenario"]["coefficient"] = {"k": -1.0, "source": "user"}
    doc = parse_payload(payload, validate=False)
    assert doc.scenario.coefficient.k == -1.0


def test_warnings_do_not_block_parsing():
    payload = minimal_payload()
    payload["scenario"]["case_study"]["sampling"] = "volunteer"
    payload["scenario"]["coefficient"] = {"k": 0.9, "source": "volunteer_default"}
    doc = parse_payload(payload)  # warning-severity issues only
    assert doc.scenario.coefficient.k == 0.9


# ---------------------------------------------------------------------------
# error formatting


def test_document_error_string_format():
    err = DocumentError("some-code", "a.b[2].c", "broke")
    assert str(err) == "[some-code] a.b[2].c: broke"


def test_format_path_mixes_keys_and_indices():
    path = ("scenario", "case_study", "modified", 0, "activity")
    assert format_path(path) == "scenario.case_study.modified[0].activity"


def test_serialization_omits_empty_sections():
    emitted = serialize_scenario(parse_payload(minimal_payload()))
    data = json.loads(emitted)
    assert "baseline" not in data
    assert "distributions" not in data
    assert "metadata" not in data
    assert "rebound_model" not in data["scenario"]


def test_deep_copy_of_payload_parses_identically():
    payload = minimal_payload()
    a = parse_payload(payload)
    b = parse_payload(copy.deepcopy(payload))
    assert a == b
    assert serialize_scenario(a) == serialize_scenario(b)
