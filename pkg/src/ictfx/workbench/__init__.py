"""Scenario file handling, assessment reports, CLI and HTTP service."""

from .serialization import (
    DocumentError,
    DocumentMetadata,
    ScenarioDocument,
    canonical_json,
    document_to_dict,
    parse_scenario,
    serialize_scenario,
)
from .report import AssessmentOptions, AssessmentReport, run_assessment

__all__ = [
    "AssessmentOptions",
    "AssessmentReport",
    "DocumentError",
    "DocumentMetadata",
    "ScenarioDocument",
    "canonical_json",
    "document_to_dict",
    "parse_scenario",
    "run_assessment",
    "serialize_scenario",
]
